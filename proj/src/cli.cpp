#include "carnot/cli.hpp"

#include "carnot/algebra.hpp"
#include "carnot/derivations.hpp"
#include "carnot/groebner.hpp"
#include "carnot/rigidity.hpp"
#include "carnot/ss_prolongation.hpp"
#include "carnot/tanaka.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace carnot {

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitCap = 2;
constexpr int kExitInternal = 3;

std::string fnv1a64(const std::string& data) {
    unsigned long long h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open input file '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

json gaussian_json(const GaussianRational& z) { return json::array({z.re.str(), z.im.str()}); }

json matrix_json(const QMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).str());
        rows.push_back(std::move(row));
    }
    return rows;
}

json derivation_json(const StrataDerivation& d) {
    json blocks = json::array();
    for (const auto& b : d.blocks) blocks.push_back(matrix_json(b));
    return json{{"blocks", std::move(blocks)}};
}

std::string matrix_text(const QMatrix& m) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i) os << "; ";
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) os << " ";
            os << m.at(i, j).str();
        }
    }
    os << "]";
    return os.str();
}

// Linear combination text like "-2*Y + X1"; "0" when empty.
std::string combo_text(const std::vector<Rational>& coords, const std::vector<std::string>& labels) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (coords[i].is_zero()) continue;
        Rational a = coords[i].abs();
        if (first)
            os << (coords[i].sign() < 0 ? "-" : "");
        else
            os << (coords[i].sign() < 0 ? " - " : " + ");
        first = false;
        if (!a.is_one()) os << a.str() << "*";
        os << labels[i];
    }
    return first ? "0" : os.str();
}

std::string gaussian_combo_text(const std::vector<GaussianRational>& coords,
                                const std::vector<std::string>& labels) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (coords[i].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        const GaussianRational& z = coords[i];
        if (z == GaussianRational(1))
            os << labels[i];
        else if (z.is_real() || z.re.is_zero())
            os << z.str() << "*" << labels[i];
        else
            os << "(" << z.str() << ")*" << labels[i];
    }
    return first ? "0" : os.str();
}

struct Report {
    std::vector<std::string> command;
    std::string digest;
    std::string status = "ok";
    json result = json::object();
    std::string text;
    long elapsed_ms = 0;
    int exit_code = kExitOk;

    // Timing is text-only: the structured report stays byte-identical across
    // runs on identical inputs.
    void emit(bool as_json, std::ostream& out) const {
        if (as_json) {
            json j{{"command", command},
                   {"input_digest", digest},
                   {"status", status},
                   {"result", result}};
            out << j.dump(2) << "\n";
        } else {
            out << text;
            out << "elapsed: " << elapsed_ms << " ms\n";
        }
    }
};

json issues_json(const std::vector<ValidationIssue>& issues) {
    json arr = json::array();
    for (const auto& i : issues) arr.push_back({{"kind", to_string(i.kind)}, {"detail", i.detail}});
    return arr;
}

std::vector<std::string> g1_labels(const GradedLieAlgebra& a) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < a.stratum_dim(1); ++i)
        out.push_back(a.basis_name(a.stratum_offset(1) + i));
    return out;
}

void render_table(std::ostream& os, const ExportedAlgebra& e) {
    std::vector<std::vector<std::string>> cells(e.dim + 1,
                                                std::vector<std::string>(e.dim + 1));
    cells[0][0] = "";
    for (std::size_t i = 0; i < e.dim; ++i) {
        cells[0][i + 1] = e.labels[i];
        cells[i + 1][0] = e.labels[i];
        for (std::size_t j = 0; j < e.dim; ++j)
            cells[i + 1][j + 1] = combo_text(e.c[i][j], e.labels);
    }
    std::vector<std::size_t> width(e.dim + 1, 0);
    for (const auto& row : cells)
        for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    for (const auto& row : cells) {
        for (std::size_t c = 0; c < row.size(); ++c)
            os << std::left << std::setw(static_cast<int>(width[c]) + 2) << row[c];
        os << "\n";
    }
}

json table_json(const ExportedAlgebra& e) {
    json entries = json::array();
    for (std::size_t i = 0; i < e.dim; ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < e.dim; ++j) {
            json coords = json::array();
            for (const auto& x : e.c[i][j]) coords.push_back(x.str());
            row.push_back(std::move(coords));
        }
        entries.push_back(std::move(row));
    }
    return json{{"labels", e.labels}, {"entries", std::move(entries)}};
}

int cmd_validate(const std::string& path, Report& rep) {
    std::string text = read_file(path);
    rep.digest = fnv1a64(text);
    GradedLieAlgebra a = parse_algebra(text, false);
    auto issues = validate_structure(a);
    rep.result = {{"name", a.name()},
                  {"dim", a.dim()},
                  {"step", a.step()},
                  {"valid", issues.empty()},
                  {"issues", issues_json(issues)}};
    std::ostringstream os;
    os << "algebra " << a.name() << ": dim " << a.dim() << ", step " << a.step() << "\n";
    for (const auto& i : issues) os << "[" << to_string(i.kind) << "] " << i.detail << "\n";
    os << (issues.empty() ? "OK" : "INVALID") << "\n";
    rep.text = os.str();
    if (!issues.empty()) {
        rep.status = "invalid-input";
        return kExitInvalid;
    }
    return kExitOk;
}

int cmd_derive(const std::string& path, bool with_h0, bool with_conformal, Report& rep) {
    std::string text = read_file(path);
    rep.digest = fnv1a64(text);
    GradedLieAlgebra a = parse_algebra(text);
    std::ostringstream os;

    auto g0 = strata_derivations(a);
    json jg0 = json::array();
    for (const auto& d : g0) jg0.push_back(derivation_json(d));
    rep.result["g0_dim"] = g0.size();
    rep.result["g0_basis"] = std::move(jg0);
    os << "g0(" << a.name() << "): dim " << g0.size() << "\n";
    for (std::size_t i = 0; i < g0.size(); ++i) {
        os << "  D" << i << ":";
        for (const auto& b : g0[i].blocks) os << " " << matrix_text(b);
        os << "\n";
    }

    if (with_h0) {
        auto h = h_zero(a);
        json jh = json::array();
        for (const auto& d : h.basis) jh.push_back(derivation_json(d));
        json jid = json::array();
        for (const auto& m : h.identified.basis) jid.push_back(matrix_json(m));
        rep.result["h0_dim"] = h.basis.size();
        rep.result["h0_basis"] = std::move(jh);
        rep.result["h0_identified"] = std::move(jid);
        os << "h0(" << a.name() << "): dim " << h.basis.size() << " (identified in gl("
           << a.stratum_dim(1) << "))\n";
        for (std::size_t i = 0; i < h.identified.basis.size(); ++i)
            os << "  A" << i << ": " << matrix_text(h.identified.basis[i]) << "\n";
    }

    if (with_conformal) {
        auto conf = conformal_subalgebra(a);
        json jc = json::array();
        for (const auto& d : conf) jc.push_back(derivation_json(d));
        rep.result["conformal_dim"] = conf.size();
        rep.result["conformal_basis"] = std::move(jc);
        os << "conformal g0(" << a.name() << "): dim " << conf.size() << "\n";
        for (std::size_t i = 0; i < conf.size(); ++i) {
            os << "  C" << i << ":";
            for (const auto& b : conf[i].blocks) os << " " << matrix_text(b);
            os << "\n";
        }
    }
    rep.text = os.str();
    return kExitOk;
}

int cmd_prolong(const std::string& path, const std::string& g0_name, bool restricted, int max_level,
                bool with_table, const std::string& basis_change, Report& rep) {
    std::string text = read_file(path);
    rep.digest = fnv1a64(text);
    GradedLieAlgebra a = parse_algebra(text);

    TowerOptions opt;
    opt.restricted = restricted;
    opt.max_level = max_level;
    if (g0_name == "full")
        opt.mode = G0Mode::Full;
    else if (g0_name == "conformal")
        opt.mode = G0Mode::Conformal;
    else if (g0_name == "h0")
        opt.mode = G0Mode::H0;
    else
        throw std::invalid_argument("unknown g0 mode '" + g0_name + "' (use full, conformal, h0)");

    ProlongationTower t = ProlongationTower::build(a, opt);

    std::ostringstream os;
    os << "tower(" << a.name() << ", g0=" << g0_name << (restricted ? ", restricted" : "")
       << ")\n";
    json levels = json::array();
    for (int k = 0; k < t.computed_levels(); ++k) {
        levels.push_back({{"level", k}, {"dim", t.level_dim(k)}});
        os << "g_" << k << ": dim " << t.level_dim(k) << "\n";
    }
    rep.result["levels"] = std::move(levels);
    bool terminated = t.terminated();
    rep.result["tower_status"] = {{"kind", terminated ? "terminated" : "cap-reached"},
                                  {"level", t.status().level}};
    if (terminated)
        os << "terminated at level " << t.status().level << "\n";
    else
        os << "cap reached at level " << t.status().level << "\n";

    if (with_table) {
        if (!terminated) {
            os << "bracket table unavailable: tower did not terminate\n";
        } else {
            ExportedAlgebra e;
            if (basis_change.empty()) {
                e = export_graded_algebra(t);
            } else if (basis_change == "su12") {
                e = su12_table(t);
            } else {
                throw std::invalid_argument("unknown change of basis '" + basis_change + "'");
            }
            if (!exported_table_consistent(e))
                throw TowerError("exported table fails the Jacobi re-check");
            rep.result["table"] = table_json(e);
            os << "bracket table (" << e.dim << "x" << e.dim << "):\n";
            render_table(os, e);
        }
    }
    rep.text = os.str();
    if (!terminated) {
        rep.status = "cap-reached";
        return kExitCap;
    }
    return kExitOk;
}

int cmd_ss(const std::string& builtin, const std::string& matrices_path, int max_k, Report& rep) {
    MatrixSubspace g0;
    std::string source;
    if (!builtin.empty()) {
        auto colon = builtin.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("--builtin expects kind:N, e.g. co:3");
        g0 = classical_matrix_algebra(builtin.substr(0, colon),
                                      std::stoul(builtin.substr(colon + 1)));
        source = builtin;
    } else {
        std::string text = read_file(matrices_path);
        g0 = parse_matrix_subspace(text);
        source = text;
    }
    rep.digest = fnv1a64(source);

    FiniteTypeScan scan = finite_type_scan(g0, max_k);
    std::ostringstream os;
    json dims = json::array();
    for (std::size_t i = 0; i < scan.dims.size(); ++i) {
        dims.push_back(scan.dims[i]);
        os << "g^(" << i << "): dim " << scan.dims[i] << "\n";
    }
    rep.result["dims"] = std::move(dims);
    if (scan.finite) {
        rep.result["type"] = {{"finite", true}, {"k", scan.type}};
        os << "finite type " << scan.type << "\n";
    } else {
        rep.result["type"] = {{"finite", false}, {"scanned_to", scan.scanned_to}};
        os << "undetermined up to " << scan.scanned_to
           << " (truncated scan cannot certify infinite type)\n";
    }
    rep.text = os.str();
    if (!scan.finite) {
        rep.status = "cap-reached";
        return kExitCap;
    }
    return kExitOk;
}

int cmd_rigidity(const std::string& path, bool witness, bool cross_check, Report& rep) {
    std::string text = read_file(path);
    rep.digest = fnv1a64(text);
    GradedLieAlgebra a = parse_algebra(text);

    VerdictOptions opt;
    opt.cross_check = cross_check;
    opt.find_witness = witness;
    RigidityVerdict v = rigidity_verdict(a, opt);

    std::ostringstream os;
    os << "verdict: " << to_string(v.kind) << "\n";
    rep.result["verdict"] = to_string(v.kind);
    rep.result["criteria"] = v.criteria;
    os << "criteria:";
    for (const auto& c : v.criteria) os << " " << c;
    os << "\n";
    if (v.witness) {
        json coords = json::array();
        for (const auto& z : *v.witness) coords.push_back(gaussian_json(z));
        rep.result["witness"] = {{"space", "g-1"}, {"basis", g1_labels(a)}, {"coords", coords}};
        os << "witness: " << gaussian_combo_text(*v.witness, g1_labels(a)) << "\n";
    }
    if (v.cross_check_agrees) {
        rep.result["cross_check_agrees"] = *v.cross_check_agrees;
        os << "cross-check: " << (*v.cross_check_agrees ? "agrees" : "DISAGREES") << "\n";
    }
    rep.result["gb_stats"] = {{"steps", v.gb.steps}, {"basis_size", v.gb.basis_size}};
    rep.text = os.str();
    return kExitOk;
}

int cmd_catalog(bool list, const std::string& emit, const std::string& out_path, Report& rep) {
    rep.digest = fnv1a64(list ? "list" : emit);
    std::ostringstream os;
    if (list || emit.empty()) {
        json names = json::array();
        for (const auto& n : catalog_names()) {
            names.push_back(n);
            os << n << "\n";
        }
        rep.result["names"] = std::move(names);
        rep.text = os.str();
        return kExitOk;
    }
    GradedLieAlgebra a = catalog_build(emit);
    std::string text = a.serialize();
    if (!out_path.empty()) {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw std::invalid_argument("cannot write to '" + out_path + "'");
        out << text;
        os << "wrote " << a.name() << " to " << out_path << "\n";
    } else {
        os << text;
    }
    rep.result["name"] = a.name();
    rep.result["dim"] = a.dim();
    rep.result["file"] = out_path;
    rep.text = os.str();
    return kExitOk;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"carnot: exact rigidity and prolongation computations for stratified Lie algebras"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "emit the structured report");

    std::string file, g0_name = "full", basis_change, builtin, matrices, emit_name, out_path;
    bool restricted = false, with_table = false, with_h0 = false, with_conformal = false;
    bool witness = false, cross_check = false, list = false;
    int max_level = 10, max_k = 4;

    auto* v = app.add_subcommand("validate", "parse an algebra file and check its invariants");
    v->add_option("file", file)->required();

    auto* d = app.add_subcommand("derive", "strata-preserving derivations g0(n)");
    d->add_option("file", file)->required();
    d->add_flag("--h0", with_h0, "also compute h0(n) and its gl(g_-1) identification");
    d->add_flag("--conformal", with_conformal, "also compute the conformal subalgebra");

    auto* p = app.add_subcommand("prolong", "Tanaka prolongation tower");
    p->add_option("file", file)->required();
    p->add_option("--g0", g0_name, "g0 selection: full, conformal, h0")->required();
    p->add_flag("--restricted", restricted, "restricted tower through the chosen g0");
    p->add_option("--max", max_level, "level cap");
    p->add_flag("--table", with_table, "print the bracket table of a terminated tower");
    p->add_option("--change-of-basis", basis_change, "named basis change (su12)");

    auto* s = app.add_subcommand("ss", "Singer-Sternberg prolongation of a matrix subspace");
    auto* opt_builtin = s->add_option("--builtin", builtin, "co:N | o:N | gl:N | sl:N");
    auto* opt_matrices = s->add_option("--matrices", matrices, "matrix subspace file");
    opt_builtin->excludes(opt_matrices);
    s->add_option("--max", max_k, "scan cap");

    auto* r = app.add_subcommand("rigidity", "decide rigidity of a stratified Lie algebra");
    r->add_option("file", file)->required();
    r->add_flag("--witness", witness, "search for an explicit witness");
    r->add_flag("--cross-check", cross_check, "also decide the h0-side rank-one ideal");

    auto* c = app.add_subcommand("catalog", "named algebra constructions");
    c->add_flag("--list", list, "list catalog names");
    c->add_option("--emit", emit_name, "catalog key to materialize");
    c->add_option("-o", out_path, "output file for --emit");

    // --json lives on the parent; let it match when given after a subcommand.
    for (auto* sub : {v, d, p, s, r, c}) sub->fallthrough();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "argument error: " << e.what() << "\n";
        return kExitInvalid;
    }

    Report rep;
    rep.command = args;
    rep.digest = fnv1a64("");
    int code = kExitInternal;
    auto started = std::chrono::steady_clock::now();
    try {
        if (v->parsed())
            code = cmd_validate(file, rep);
        else if (d->parsed())
            code = cmd_derive(file, with_h0, with_conformal, rep);
        else if (p->parsed())
            code = cmd_prolong(file, g0_name, restricted, max_level, with_table, basis_change, rep);
        else if (s->parsed()) {
            if (builtin.empty() && matrices.empty())
                throw std::invalid_argument("ss: provide --builtin or --matrices");
            code = cmd_ss(builtin, matrices, max_k, rep);
        } else if (r->parsed())
            code = cmd_rigidity(file, witness, cross_check, rep);
        else if (c->parsed())
            code = cmd_catalog(list, emit_name, out_path, rep);
    } catch (const ParseError& e) {
        rep.status = "invalid-input";
        rep.result = {{"error", e.what()}, {"line", e.line}, {"col", e.col}};
        rep.text = std::string("parse error: ") + e.what() + "\n";
        code = kExitInvalid;
    } catch (const ValidationError& e) {
        rep.status = "invalid-input";
        rep.result = {{"error", e.what()}, {"issues", issues_json(e.issues)}};
        rep.text = std::string(e.what()) + "\nINVALID\n";
        code = kExitInvalid;
    } catch (const ComputationCapReached& e) {
        rep.status = "cap-reached";
        rep.result = {{"error", "computation cap reached"}, {"steps", e.steps}};
        rep.text = "computation cap reached; no verdict (raise CARNOT_MAX_GB_STEPS)\n";
        code = kExitCap;
    } catch (const CharacteristicInput& e) {
        rep.status = "invalid-input";
        rep.result = {{"error", e.what()}};
        rep.text = std::string("error: ") + e.what() + "\n";
        code = kExitInvalid;
    } catch (const std::invalid_argument& e) {
        rep.status = "invalid-input";
        rep.result = {{"error", e.what()}};
        rep.text = std::string("error: ") + e.what() + "\n";
        code = kExitInvalid;
    } catch (const std::exception& e) {
        rep.status = "internal-error";
        rep.result = {{"error", e.what()}};
        rep.text = std::string("internal error: ") + e.what() + "\n";
        code = kExitInternal;
    }
    rep.exit_code = code;
    rep.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - started)
                         .count();
    rep.emit(as_json, out);
    return code;
}

}  // namespace carnot
