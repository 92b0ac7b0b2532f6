#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "carnot/ss_prolongation.hpp"
#include "carnot/tanaka.hpp"
#include "test_util.hpp"

using namespace carnot;

namespace {

ProlongationTower conformal_tower(const std::string& key, int cap = 10) {
    TowerOptions opt;
    opt.mode = G0Mode::Conformal;
    opt.restricted = true;
    opt.max_level = cap;
    return ProlongationTower::build(catalog_build(key), opt);
}

ProlongationTower full_tower(const std::string& key, int cap) {
    TowerOptions opt;
    opt.max_level = cap;
    return ProlongationTower::build(catalog_build(key), opt);
}

// Count of monomials x^a y^b t^c with weights (1,1,2) and a + b + 2c = k + 2;
// the graded dimension of the contact algebra of the 3-dim Heisenberg group.
std::size_t heis_contact_dim(int k) {
    std::size_t count = 0;
    for (int c = 0; 2 * c <= k + 2; ++c) count += static_cast<std::size_t>(k + 2 - 2 * c) + 1;
    return count;
}

}  // namespace

TEST_CASE("conformal restricted tower of heisenberg(3)") {
    auto t = conformal_tower("heisenberg:3", 6);
    REQUIRE(t.terminated());
    CHECK(t.status().level == 3);
    CHECK(t.level_dim(0) == 2);
    CHECK(t.level_dim(1) == 2);
    CHECK(t.level_dim(2) == 1);
    CHECK(t.level_dim(3) == 0);

    // every basis element satisfies the defining constraint, re-checked directly
    for (int k = 0; k < t.computed_levels(); ++k)
        for (const auto& e : t.level_basis(k)) CHECK(t.leibniz_holds(e));
}

TEST_CASE("abelian(1) full tower: one coefficient per degree, cap reached") {
    TowerOptions opt;
    opt.max_level = 5;
    auto t = ProlongationTower::build(catalog_build("abelian:1"), opt);
    CHECK(!t.terminated());
    CHECK(t.status().level == 5);
    for (int k = 0; k <= 5; ++k) CHECK(t.level_dim(k) == 1);
}

TEST_CASE("full tower of heisenberg(3) matches the weighted-monomial oracle") {
    auto t = full_tower("heisenberg:3", 4);
    CHECK(!t.terminated());
    for (int k = 0; k <= 4; ++k) CHECK(t.level_dim(k) == heis_contact_dim(k));
    for (int k = 0; k <= 4; ++k)
        for (const auto& e : t.level_basis(k)) CHECK(t.leibniz_holds(e));
}

TEST_CASE("the rank-one element persists through every full-tower level") {
    auto t = full_tower("heisenberg:3", 4);
    // E12 = e1 (x) eps2 lies in h^(0) = sl(2).
    std::vector<Rational> v0{Rational(1), Rational(0)}, omega{Rational(0), Rational(1)};
    for (int k = 0; k <= 4; ++k) {
        auto e = rank_one_level_element(t, v0, omega, k);
        CHECK(t.leibniz_holds(e));
        auto coords = t.express(e);
        REQUIRE(coords.has_value());
        bool nonzero = false;
        for (const auto& x : *coords)
            if (!x.is_zero()) nonzero = true;
        CHECK(nonzero);
    }
}

TEST_CASE("grading element acts with the stratum weight") {
    auto t = full_tower("heisenberg:3", 2);
    auto g0 = strata_derivations(t.algebra());
    std::vector<std::vector<Rational>> flat;
    for (const auto& d : g0) flat.push_back(d.flatten());
    auto e_coords = in_span(flat, grading_derivation(t.algebra()).flatten());
    REQUIRE(e_coords.has_value());
    auto ev = t.level_vec(0, *e_coords);
    for (int j = 1; j <= t.algebra().step(); ++j) {
        for (std::size_t i = 0; i < t.algebra().stratum_dim(j); ++i) {
            std::vector<Rational> u(t.algebra().stratum_dim(j), Rational(0));
            u[i] = Rational(1);
            auto img = t.bracket(ev, t.stratum_vec(j, u));
            CHECK(img.level == -j);
            for (std::size_t m = 0; m < img.coords.size(); ++m)
                CHECK(img.coords[m] == (m == i ? Rational(j) : Rational(0)));
        }
    }
}

TEST_CASE("bracket antisymmetry and level bookkeeping") {
    auto t = conformal_tower("heisenberg:3", 6);
    testutil::Rng rng(12);
    for (int trial = 0; trial < 10; ++trial) {
        int k = static_cast<int>(rng.range(0, 2));
        auto u = t.level_vec(k, rng.qvector(t.level_dim(k)));
        auto uu = t.bracket(u, u);
        CHECK(uu.is_zero());
        int l = static_cast<int>(rng.range(0, 2));
        auto v = t.level_vec(l, rng.qvector(t.level_dim(l)));
        auto uv = t.bracket(u, v);
        auto vu = t.bracket(v, u);
        CHECK(uv.level == k + l);
        REQUIRE(uv.coords.size() == vu.coords.size());
        for (std::size_t i = 0; i < uv.coords.size(); ++i) CHECK(uv.coords[i] == -vu.coords[i]);
    }
}

TEST_CASE("restricted levels are closed under the tower bracket") {
    for (const char* key : {"heisenberg:3", "heisenberg:5"}) {
        auto t = conformal_tower(key, 8);
        REQUIRE(t.terminated());
        for (int k = 0; k < t.computed_levels(); ++k)
            for (int l = k; l < t.computed_levels(); ++l)
                for (std::size_t i = 0; i < t.level_dim(k); ++i)
                    for (std::size_t j = 0; j < t.level_dim(l); ++j) {
                        std::vector<Rational> ui(t.level_dim(k), Rational(0));
                        ui[i] = Rational(1);
                        std::vector<Rational> vj(t.level_dim(l), Rational(0));
                        vj[j] = Rational(1);
                        // must not throw: every bracket lands in a computed level
                        auto w = t.bracket(t.level_vec(k, ui), t.level_vec(l, vj));
                        CHECK(w.level == k + l);
                    }
    }
}

TEST_CASE("jacobi identity on all computed triples of a cap-reached tower") {
    auto t = full_tower("heisenberg:3", 3);
    auto& a = t.algebra();
    auto unit_level = [&](int k, std::size_t i) {
        std::vector<Rational> u(t.level_dim(k), Rational(0));
        u[i] = Rational(1);
        return t.level_vec(k, u);
    };
    auto is_zero_sum = [&](const ProlongationTower::Vec& x, const ProlongationTower::Vec& y,
                           const ProlongationTower::Vec& z) {
        REQUIRE(x.level == y.level);
        REQUIRE(y.level == z.level);
        for (std::size_t m = 0; m < x.coords.size(); ++m)
            CHECK((x.coords[m] + y.coords[m] + z.coords[m]).is_zero());
    };
    // nonnegative triples whose pairwise sums stay within the cap
    for (int ka = 0; ka <= 3; ++ka)
        for (int kb = ka; kb <= 3; ++kb)
            for (int kc = kb; kc <= 3 && ka + kb + kc <= 3; ++kc)
                for (std::size_t i = 0; i < t.level_dim(ka); i += 2)
                    for (std::size_t j = 0; j < t.level_dim(kb); j += 2)
                        for (std::size_t l = 0; l < t.level_dim(kc); l += 2) {
                            auto u = unit_level(ka, i), v = unit_level(kb, j), w = unit_level(kc, l);
                            is_zero_sum(t.bracket(t.bracket(u, v), w),
                                        t.bracket(t.bracket(v, w), u),
                                        t.bracket(t.bracket(w, u), v));
                        }
    // mixed triples: two tower elements against an algebra basis vector
    for (int ka = 0; ka <= 1; ++ka)
        for (int kb = ka; kb <= 2 && ka + kb <= 3; ++kb)
            for (std::size_t i = 0; i < t.level_dim(ka); ++i)
                for (std::size_t j = 0; j < t.level_dim(kb); ++j)
                    for (std::size_t b = 0; b < a.dim(); ++b) {
                        int depth = a.stratum_of(b);
                        std::vector<Rational> e(a.stratum_dim(depth), Rational(0));
                        e[b - a.stratum_offset(depth)] = Rational(1);
                        auto u = unit_level(ka, i), v = unit_level(kb, j);
                        auto w = t.stratum_vec(depth, e);
                        is_zero_sum(t.bracket(t.bracket(u, v), w), t.bracket(t.bracket(v, w), u),
                                    t.bracket(t.bracket(w, u), v));
                    }
}

TEST_CASE("monotone termination: once zero, always zero") {
    TowerOptions opt;
    opt.mode = G0Mode::Conformal;
    opt.restricted = true;
    opt.max_level = 6;
    opt.stop_at_first_zero = false;
    auto t = ProlongationTower::build(catalog_build("heisenberg:3"), opt);
    REQUIRE(t.terminated());
    CHECK(t.status().level == 3);
    for (int k = 3; k <= 6; ++k) CHECK(t.level_dim(k) == 0);
}

TEST_CASE("h spaces") {
    SUBCASE("heisenberg full tower: h_0 = 3, h_1 = 4") {
        auto t = full_tower("heisenberg:3", 3);
        auto h = t.h_spaces();
        CHECK(h[0].size() == 3);
        CHECK(h[1].size() == 4);  // first prolongation of sl(2), brute-forced in criterion 6
        // [h_k, g_-1] subset h_{k-1}: deep components of the bracket vanish
        for (int k = 1; k <= 2; ++k) {
            for (const auto& coords : h[k]) {
                auto u = t.level_vec(k, coords);
                for (std::size_t b = 0; b < t.algebra().stratum_dim(1); ++b) {
                    std::vector<Rational> eb(t.algebra().stratum_dim(1), Rational(0));
                    eb[b] = Rational(1);
                    auto w = t.bracket(u, t.stratum_vec(1, eb));
                    REQUIRE(w.level == k - 1);
                    // membership in span(h_{k-1})
                    CHECK(in_span(h[k - 1], w.coords).has_value());
                }
            }
        }
    }
    SUBCASE("abelian: h_k equals the whole level") {
        TowerOptions opt;
        opt.max_level = 3;
        auto t = ProlongationTower::build(catalog_build("abelian:2"), opt);
        auto h = t.h_spaces();
        for (int k = 0; k <= 3; ++k) CHECK(h[k].size() == t.level_dim(k));
    }
}

TEST_CASE("step-1 restricted towers reproduce the Singer-Sternberg levels") {
    // On an abelian algebra, the level-k solutions are exactly the symmetric
    // maps with slices in g0, so the tower and the scan must agree.
    for (int n : {2, 3}) {
        TowerOptions opt;
        opt.mode = G0Mode::Conformal;
        opt.restricted = true;
        opt.max_level = 4;
        auto t = ProlongationTower::build(catalog_build("abelian:" + std::to_string(n)), opt);
        auto scan = finite_type_scan(classical_matrix_algebra("co", n), 4);
        for (std::size_t k = 0; k < scan.dims.size(); ++k)
            CHECK(t.level_dim(static_cast<int>(k)) == scan.dims[k]);
        if (scan.finite) {
            CHECK(t.terminated());
            CHECK(t.status().level == scan.type);
        } else {
            CHECK(!t.terminated());
        }
    }
}

TEST_CASE("h_k dimensions match the Singer-Sternberg levels of h^(0) across the catalog") {
    for (const char* key : {"abelian:2", "heisenberg:3", "heisenberg:5", "engel",
                            "complex_heisenberg_real", "free_two_step:3", "free_two_step:4"}) {
        auto a = catalog_build(key);
        auto t = full_tower(key, 3);
        auto h = t.h_spaces();
        auto h0 = h_zero(a);
        for (int k = 0; k <= 3; ++k) {
            std::size_t tanaka_dim = k < t.computed_levels() ? h[k].size() : 0;
            std::size_t ss_dim = h0.identified.dim() == 0
                                     ? 0
                                     : ss_prolongation_level(h0.identified, k).size();
            INFO(key << " level " << k);
            CHECK(tanaka_dim == ss_dim);
        }
    }
}

TEST_CASE("towers through h0") {
    TowerOptions opt;
    opt.mode = G0Mode::H0;
    opt.restricted = true;
    opt.max_level = 4;
    // h0(free_two_step:3) is trivial: the tower terminates immediately.
    auto t = ProlongationTower::build(catalog_build("free_two_step:3"), opt);
    CHECK(t.terminated());
    CHECK(t.status().level == 0);
}

TEST_CASE("invalid mode combinations are rejected") {
    TowerOptions bad1;
    bad1.mode = G0Mode::Full;
    bad1.restricted = true;
    CHECK_THROWS_AS(ProlongationTower::build(catalog_build("heisenberg:3"), bad1),
                    std::invalid_argument);
    TowerOptions bad2;
    bad2.mode = G0Mode::Conformal;
    bad2.restricted = false;
    CHECK_THROWS_AS(ProlongationTower::build(catalog_build("heisenberg:3"), bad2),
                    std::invalid_argument);
}

TEST_CASE("bracket of uncomputed level pairs raises LevelNotComputed") {
    auto t = full_tower("heisenberg:3", 2);  // cap reached at 2
    std::vector<Rational> u1(t.level_dim(1), Rational(0));
    u1[0] = Rational(1);
    std::vector<Rational> u2(t.level_dim(2), Rational(0));
    u2[0] = Rational(1);
    CHECK_THROWS_AS(t.bracket(t.level_vec(1, u1), t.level_vec(2, u2)), LevelNotComputed);
}

TEST_CASE("exported graded algebra") {
    auto t = conformal_tower("heisenberg:3", 6);
    auto e = export_graded_algebra(t);
    CHECK(e.dim == 8);
    CHECK(exported_table_consistent(e));

    // not terminated: export refuses
    auto open_tower = full_tower("heisenberg:3", 2);
    CHECK_THROWS_AS(export_graded_algebra(open_tower), TowerNotTerminated);
}

TEST_CASE("su12 presentation spot entries") {
    auto t = conformal_tower("heisenberg:3", 6);
    auto e = su12_table(t);
    REQUIRE(e.dim == 8);
    CHECK(exported_table_consistent(e));
    auto idx = [&](const std::string& l) {
        for (std::size_t i = 0; i < e.labels.size(); ++i)
            if (e.labels[i] == l) return i;
        throw std::logic_error("label");
    };
    auto entry = [&](const std::string& r, const std::string& c) {
        return e.c[idx(r)][idx(c)];
    };
    // [Xb1, Xb2] = -2 Yb
    auto v = entry("Xb1", "Xb2");
    CHECK(v[idx("Yb")] == Rational(-2));
    // [Y, Yb] = 2 H1
    CHECK(entry("Y", "Yb")[idx("H1")] == Rational(2));
    // [H2, Yb] = 0
    for (const auto& x : entry("H2", "Yb")) CHECK(x.is_zero());

    // wrong tower shape is rejected
    auto engel_tower = conformal_tower("engel", 6);
    CHECK_THROWS_AS(su12_table(engel_tower), TowerError);
}

TEST_CASE("restricted conformal towers terminate on the desk-scale catalog") {
    for (const char* key : {"heisenberg:3", "heisenberg:5", "engel", "free_two_step:3"}) {
        auto t = conformal_tower(key, 10);
        CHECK(t.terminated());
    }
    // heisenberg(5): the u(2)-conformal pattern (5, 4, 1, 0)
    auto t5 = conformal_tower("heisenberg:5", 10);
    CHECK(t5.level_dim(0) == 5);
    CHECK(t5.level_dim(1) == 4);
    CHECK(t5.level_dim(2) == 1);
    CHECK(t5.status().level == 3);
}
