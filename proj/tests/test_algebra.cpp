#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "carnot/algebra.hpp"
#include "test_util.hpp"

using namespace carnot;

namespace {

const char* kHeis3 =
    "name heisenberg_3\n"
    "step 2\n"
    "stratum 1: X1 X2\n"
    "stratum 2: Y\n"
    "bracket [X1,X2] = Y\n";

std::vector<Rational> unit(const GradedLieAlgebra& a, const std::string& name) {
    std::vector<Rational> v(a.dim(), Rational(0));
    v[*a.index_of(name)] = Rational(1);
    return v;
}

}  // namespace

TEST_CASE("parsing the heisenberg file") {
    auto a = parse_algebra(kHeis3);
    CHECK(a.name() == "heisenberg_3");
    CHECK(a.dim() == 3);
    CHECK(a.step() == 2);
    CHECK(a.stratum_dim(1) == 2);
    CHECK(a.stratum_dim(2) == 1);
    auto br = a.bracket(unit(a, "X1"), unit(a, "X2"));
    CHECK(br == unit(a, "Y"));
    // auto-filled antisymmetric partner
    auto rev = a.bracket(unit(a, "X2"), unit(a, "X1"));
    CHECK(rev[*a.index_of("Y")] == Rational(-1));
}

TEST_CASE("parser errors carry positions and reasons") {
    SUBCASE("grading violation is rejected at parse time") {
        const char* bad =
            "name bad\nstep 2\nstratum 1: X1 X2\nstratum 2: Y\nbracket [X1,X2] = X1\n";
        CHECK_THROWS_AS(parse_algebra(bad), ValidationError);
        try {
            parse_algebra(bad);
        } catch (const ValidationError& e) {
            REQUIRE(!e.issues.empty());
            CHECK(e.issues.front().kind == ValidationIssue::Kind::Grading);
        }
    }
    SUBCASE("rational coefficients parse exactly") {
        const char* text =
            "name engelish\nstep 3\nstratum 1: X1 X2\nstratum 2: X3\nstratum 3: X4\n"
            "bracket [X1,X2] = X3\n"
            "bracket [X1,X3] = -3/2 X4\n";
        auto a = parse_algebra(text);
        auto br = a.bracket(unit(a, "X1"), unit(a, "X3"));
        CHECK(br[*a.index_of("X4")] == Rational(-3, 2));
    }
    SUBCASE("duplicate basis name") {
        CHECK_THROWS_AS(parse_algebra("name d\nstep 1\nstratum 1: X X\n"), ParseError);
    }
    SUBCASE("duplicate bracket specification, direct or reversed") {
        const char* dup =
            "name d\nstep 2\nstratum 1: X1 X2\nstratum 2: Y\n"
            "bracket [X1,X2] = Y\nbracket [X2,X1] = -Y\n";
        CHECK_THROWS_AS(parse_algebra(dup), ParseError);
    }
    SUBCASE("syntax error reports line and column") {
        try {
            parse_algebra("name ok\nstep 1\nstratum 1: X1\nbracket [X1 X1] = X1\n");
            CHECK(false);
        } catch (const ParseError& e) {
            CHECK(e.line == 4);
            CHECK(e.col > 0);
        }
    }
    SUBCASE("unknown name in bracket") {
        CHECK_THROWS(parse_algebra("name u\nstep 1\nstratum 1: X1\nbracket [X1,Z] = X1\n"));
    }
}

TEST_CASE("validation report kinds") {
    SUBCASE("bracket generation failure names the unreachable stratum") {
        GradedLieAlgebra::Builder b;
        b.name("dead_top").stratum({"X1", "X2"}).stratum({"X3"}).stratum({"X4"});
        b.bracket("X1", "X2", {{Rational(1), "X3"}});
        auto a = b.build(false);
        auto issues = a.validate();
        REQUIRE(issues.size() == 1);
        CHECK(issues[0].kind == ValidationIssue::Kind::BracketGeneration);
        CHECK(issues[0].detail.find("stratum 3") != std::string::npos);
    }
    SUBCASE("jacobi failure names the triple") {
        // On a (3|1|1) stratification the Jacobiator of (X1, X2, X3) is -Z.
        GradedLieAlgebra::Builder b;
        b.name("jacobi_bad").stratum({"X1", "X2", "X3"}).stratum({"Y"}).stratum({"Z"});
        b.bracket("X1", "X2", {{Rational(1), "Y"}});
        b.bracket("X2", "X3", {{Rational(1), "Y"}});
        b.bracket("X1", "Y", {{Rational(1), "Z"}});
        auto a = b.build(false);
        bool found = false;
        for (const auto& i : a.validate())
            if (i.kind == ValidationIssue::Kind::Jacobi &&
                i.detail.find("(X1,X2,X3)") != std::string::npos)
                found = true;
        CHECK(found);
    }
    SUBCASE("centre violation") {
        GradedLieAlgebra::Builder b;
        b.name("central_bad").stratum({"X1", "X2"}).stratum({"Y"});
        b.bracket("X1", "X2", {{Rational(1), "Y"}});
        b.bracket("X1", "Y", {{Rational(1), "X2"}});
        auto a = b.build(false);
        bool grading = false, centre = false;
        for (const auto& i : a.validate()) {
            if (i.kind == ValidationIssue::Kind::Grading) grading = true;
            if (i.kind == ValidationIssue::Kind::Centre) centre = true;
        }
        CHECK(grading);
        CHECK(centre);
    }
}

TEST_CASE("catalog algebras validate and have the declared shapes") {
    for (const char* key : {"abelian:1", "abelian:2", "abelian:3", "heisenberg:3", "heisenberg:5",
                            "free_two_step:3", "free_two_step:4", "engel",
                            "complex_heisenberg_real", "product_with_abelian:heisenberg:3:1"}) {
        auto a = catalog_build(key);
        CHECK(a.validate().empty());
    }
    auto free3 = catalog_build("free_two_step:3");
    CHECK(free3.stratum_dim(1) == 3);
    CHECK(free3.stratum_dim(2) == 3);
    auto chr = catalog_build("complex_heisenberg_real");
    CHECK(chr.bracket(unit(chr, "X2"), unit(chr, "X4")) ==
          [&] {
              auto v = unit(chr, "Y1");
              for (auto& x : v) x = -x;
              return v;
          }());
    CHECK_THROWS(catalog_build("heisenberg:4"));
    CHECK_THROWS(catalog_build("borel:2"));
}

TEST_CASE("bracket examples and properties") {
    auto engel = catalog_build("engel");
    CHECK(engel.bracket(unit(engel, "X1"), unit(engel, "X3")) == unit(engel, "X4"));

    testutil::Rng rng(9);
    auto heis = catalog_build("heisenberg:3");
    for (int t = 0; t < 10; ++t) {
        auto v = rng.qvector(3);
        auto vv = heis.bracket(v, v);
        for (const auto& x : vv) CHECK(x.is_zero());
    }

    // grading: components outside stratum i+j vanish
    for (std::size_t i = 0; i < engel.dim(); ++i)
        for (std::size_t j = 0; j < engel.dim(); ++j) {
            const auto& c = engel.bracket_basis(i, j);
            int target = engel.stratum_of(i) + engel.stratum_of(j);
            for (std::size_t m = 0; m < engel.dim(); ++m)
                if (!c[m].is_zero()) CHECK(engel.stratum_of(m) == target);
        }
}

TEST_CASE("ad matrices") {
    auto heis = catalog_build("heisenberg:3");
    CHECK(rank_of(heis.ad(unit(heis, "X1"))) == 1);
    auto free3 = catalog_build("free_two_step:3");
    CHECK(rank_of(free3.ad(unit(free3, "X1"))) == 2);
    std::vector<Rational> zero(heis.dim(), Rational(0));
    CHECK(heis.ad(zero).is_zero());
}

TEST_CASE("degenerate subspace") {
    auto ab2 = catalog_build("abelian:2");
    CHECK(degenerate_subspace(ab2).size() == 2);

    auto heis = catalog_build("heisenberg:3");
    CHECK(degenerate_subspace(heis).empty());

    auto prod = catalog_build("product_with_abelian:heisenberg:3:1");
    auto deg = degenerate_subspace(prod);
    REQUIRE(deg.size() == 1);
    // the abelian factor generator W1, last coordinate of g_{-1}
    CHECK(deg[0] == std::vector<Rational>{Rational(0), Rational(0), Rational(1)});

    // a degenerate element of g_{-1} has ad X = 0 on all of n
    for (const char* key : {"abelian:3", "product_with_abelian:heisenberg:3:1",
                            "product_with_abelian:engel:2"}) {
        auto a = catalog_build(key);
        for (const auto& v : degenerate_subspace(a)) {
            std::vector<Rational> full(a.dim(), Rational(0));
            for (std::size_t i = 0; i < v.size(); ++i) full[a.stratum_offset(1) + i] = v[i];
            CHECK(a.ad(full).is_zero());
        }
    }
}

TEST_CASE("grading derivation") {
    auto heis = catalog_build("heisenberg:3");
    auto e = grading_derivation(heis);
    CHECK(is_derivation(heis, e));
    auto full = e.full_matrix(heis);
    CHECK(full.at(0, 0) == Rational(1));
    CHECK(full.at(2, 2) == Rational(2));

    auto engel = catalog_build("engel");
    auto fe = grading_derivation(engel).full_matrix(engel);
    CHECK(fe.at(3, 3) == Rational(3));
    CHECK(is_derivation(engel, grading_derivation(engel)));

    auto ab = catalog_build("abelian:4");
    CHECK(grading_derivation(ab).full_matrix(ab) == QMatrix::identity(4));
}

TEST_CASE("serialize/parse round trip on the whole catalog") {
    for (const char* key : {"abelian:2", "heisenberg:3", "heisenberg:5", "free_two_step:3",
                            "free_two_step:4", "engel", "complex_heisenberg_real",
                            "product_with_abelian:heisenberg:3:1"}) {
        auto a = catalog_build(key);
        auto b = parse_algebra(a.serialize());
        CHECK(a.name() == b.name());
        CHECK(a.basis_names() == b.basis_names());
        REQUIRE(a.dim() == b.dim());
        for (std::size_t i = 0; i < a.dim(); ++i)
            for (std::size_t j = 0; j < a.dim(); ++j)
                CHECK(a.bracket_basis(i, j) == b.bracket_basis(i, j));
        CHECK(b.serialize() == a.serialize());
    }
}
