#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "carnot/algebra.hpp"
#include "carnot/cli.hpp"

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace carnot;
using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
    json parsed() const { return json::parse(out); }
};

Run run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = run_command(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

std::string write_temp(const std::string& name, const std::string& content) {
    std::string p = temp_path(name);
    std::ofstream f(p, std::ios::binary);
    f << content;
    return p;
}

}  // namespace

TEST_CASE("catalog emit then validate round-trips with exit 0") {
    for (const char* key : {"heisenberg:3", "heisenberg:5", "engel", "free_two_step:3",
                            "complex_heisenberg_real", "abelian:2",
                            "product_with_abelian:heisenberg:3:1"}) {
        std::string file = temp_path("carnot_cli_alg.alg");
        auto r1 = run({"catalog", "--emit", key, "-o", file});
        CHECK(r1.code == 0);
        auto r2 = run({"validate", file});
        CHECK(r2.code == 0);
        CHECK(r2.out.find("OK") != std::string::npos);
    }
}

TEST_CASE("catalog list") {
    auto r = run({"catalog", "--list"});
    CHECK(r.code == 0);
    CHECK(r.out.find("heisenberg:N") != std::string::npos);
    auto rj = run({"catalog", "--list", "--json"});
    CHECK(rj.parsed()["status"] == "ok");
}

TEST_CASE("validate rejects a grading violation with exit 1") {
    std::string file = write_temp("carnot_cli_bad.alg",
                                  "name bad\nstep 2\nstratum 1: X1 X2\nstratum 2: Y\n"
                                  "bracket [X1,X2] = X1\n");
    auto r = run({"validate", file});
    CHECK(r.code == 1);
    CHECK(r.out.find("grading") != std::string::npos);
    CHECK(r.out.find("INVALID") != std::string::npos);
    auto rj = run({"validate", file, "--json"});
    CHECK(rj.code == 1);
    CHECK(rj.parsed()["status"] == "invalid-input");
    CHECK(rj.parsed()["result"]["valid"] == false);
}

TEST_CASE("parse errors exit 1 with line information") {
    std::string file = write_temp("carnot_cli_syntax.alg", "name x\nstep 1\nstratum 9: X\n");
    auto r = run({"validate", file, "--json"});
    CHECK(r.code == 1);
    CHECK(r.parsed()["status"] == "invalid-input");
    CHECK(r.parsed()["result"]["line"] == 3);
}

TEST_CASE("rigidity command with witness") {
    std::string file = temp_path("carnot_cli_heis.alg");
    run({"catalog", "--emit", "heisenberg:3", "-o", file});
    auto r = run({"rigidity", file, "--witness", "--json"});
    CHECK(r.code == 0);
    auto j = r.parsed();
    CHECK(j["result"]["verdict"] == "NonrigidRankOne");
    CHECK(j["result"]["witness"]["coords"][0][0] == "1");
    CHECK(j["result"]["witness"]["coords"][0][1] == "0");
    CHECK(j["result"]["witness"]["basis"][0] == "X1");
}

TEST_CASE("prolong command: conformal table and full cap") {
    std::string file = temp_path("carnot_cli_heis2.alg");
    run({"catalog", "--emit", "heisenberg:3", "-o", file});

    auto r = run({"prolong", file, "--g0", "conformal", "--restricted", "--max", "6", "--table",
                  "--change-of-basis", "su12", "--json"});
    CHECK(r.code == 0);
    auto j = r.parsed();
    CHECK(j["result"]["tower_status"]["kind"] == "terminated");
    CHECK(j["result"]["tower_status"]["level"] == 3);
    CHECK(j["result"]["levels"][0]["dim"] == 2);
    CHECK(j["result"]["levels"][2]["dim"] == 1);
    CHECK(j["result"]["table"]["labels"][0] == "Y");

    auto rf = run({"prolong", file, "--g0", "full", "--max", "3"});
    CHECK(rf.code == 2);
    CHECK(rf.out.find("cap reached") != std::string::npos);
}

TEST_CASE("ss command exit codes") {
    auto r = run({"ss", "--builtin", "co:3", "--max", "4"});
    CHECK(r.code == 0);
    CHECK(r.out.find("g^(0): dim 4") != std::string::npos);
    CHECK(r.out.find("g^(1): dim 3") != std::string::npos);
    CHECK(r.out.find("g^(2): dim 0") != std::string::npos);
    CHECK(r.out.find("finite type 2") != std::string::npos);

    auto r2 = run({"ss", "--builtin", "co:2", "--max", "4"});
    CHECK(r2.code == 2);
    CHECK(r2.out.find("undetermined up to 4") != std::string::npos);
}

TEST_CASE("ss with a matrix subspace file") {
    std::string file = write_temp("carnot_cli_mats.txt", "0 1\n-1 0\n\n1 0\n0 1\n");
    auto r = run({"ss", "--matrices", file, "--max", "3", "--json"});
    CHECK(r.code == 2);  // co(2) is undetermined at any finite cap
    CHECK(r.parsed()["result"]["dims"][0] == 2);
}

TEST_CASE("structured reports are byte-identical across runs") {
    std::string file = temp_path("carnot_cli_det.alg");
    run({"catalog", "--emit", "engel", "-o", file});
    auto r1 = run({"rigidity", file, "--witness", "--cross-check", "--json"});
    auto r2 = run({"rigidity", file, "--witness", "--cross-check", "--json"});
    CHECK(r1.out == r2.out);
    auto p1 = run({"prolong", file, "--g0", "conformal", "--restricted", "--max", "8", "--json"});
    auto p2 = run({"prolong", file, "--g0", "conformal", "--restricted", "--max", "8", "--json"});
    CHECK(p1.out == p2.out);
}

TEST_CASE("gb step cap via environment exits 2") {
    std::string file = temp_path("carnot_cli_free.alg");
    run({"catalog", "--emit", "free_two_step:4", "-o", file});
    setenv("CARNOT_MAX_GB_STEPS", "1", 1);
    auto r = run({"rigidity", file});
    unsetenv("CARNOT_MAX_GB_STEPS");
    CHECK(r.code == 2);
    CHECK(r.out.find("cap") != std::string::npos);
    auto r2 = run({"rigidity", file});
    CHECK(r2.code == 0);
}

TEST_CASE("unknown inputs exit 1") {
    CHECK(run({"catalog", "--emit", "nope:3", "-o", temp_path("x.alg")}).code == 1);
    CHECK(run({"validate", temp_path("carnot_does_not_exist.alg")}).code == 1);
    CHECK(run({"prolong", temp_path("carnot_does_not_exist.alg"), "--g0", "full"}).code == 1);
    std::string file = temp_path("carnot_cli_h.alg");
    run({"catalog", "--emit", "heisenberg:3", "-o", file});
    CHECK(run({"prolong", file, "--g0", "weird"}).code == 1);
    CHECK(run({"prolong", file, "--g0", "full", "--restricted"}).code == 1);
}
