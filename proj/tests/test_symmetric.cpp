#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "carnot/ss_prolongation.hpp"
#include "carnot/symtensor.hpp"
#include "test_util.hpp"

using namespace carnot;

TEST_CASE("symmetrize") {
    SUBCASE("eps1 (x) eps2 spreads over both arrangements") {
        DenseTensor t{2, 2, {{{0, 1}, Rational(1)}}};
        SymTensor s = symmetrize(t);
        CHECK(s.coefficient({0, 1}) == Rational(1, 2));
        CHECK(s.coefficient({1, 0}) == Rational(1, 2));
        CHECK(s.coefficient({0, 0}).is_zero());
    }
    SUBCASE("idempotence on symmetric input") {
        DenseTensor t{2, 2, {}};
        t.entries[{0, 1}] = Rational(1, 2);
        t.entries[{1, 0}] = Rational(1, 2);
        t.entries[{0, 0}] = Rational(3);
        SymTensor s = symmetrize(t);
        CHECK(s.coefficient({0, 1}) == Rational(1, 2));
        CHECK(s.coefficient({0, 0}) == Rational(3));
    }
    SUBCASE("eps1 (x) eps1 (x) eps2 gives 1/3 per arrangement") {
        DenseTensor t{2, 3, {{{0, 0, 1}, Rational(1)}}};
        SymTensor s = symmetrize(t);
        CHECK(s.coefficient({0, 0, 1}) == Rational(1, 3));
        CHECK(s.coefficient({0, 1, 0}) == Rational(1, 3));
        CHECK(s.coefficient({1, 0, 0}) == Rational(1, 3));
    }
}

TEST_CASE("pairing") {
    SUBCASE("monomial cases") {
        auto e12 = SymTensor::basis_monomial(2, {0, 1});
        auto eps12 = SymTensor::basis_monomial(2, {0, 1});
        CHECK(pairing(e12, eps12) == Rational(1, 2));

        auto e11 = SymTensor::basis_monomial(2, {0, 0});
        CHECK(pairing(e11, eps12).is_zero());
        CHECK(pairing(e11, e11) == Rational(1));
    }
    SUBCASE("<v (.) v, eta (.) eta> = eta(v)^2") {
        testutil::Rng rng(5);
        for (int t = 0; t < 20; ++t) {
            auto v = rng.qvector(3);
            auto eta = rng.qvector(3);
            // v (.) v as a symmetric tensor: coefficients v_i v_j.
            SymTensor vv(3, 2), ee(3, 2);
            for (int i = 0; i < 3; ++i)
                for (int j = i; j < 3; ++j) {
                    vv.set_coefficient({i, j}, v[i] * v[j]);
                    ee.set_coefficient({i, j}, eta[i] * eta[j]);
                }
            Rational ev = eta[0] * v[0] + eta[1] * v[1] + eta[2] * v[2];
            CHECK(pairing(vv, ee) == ev * ev);
        }
    }
    SUBCASE("Gram matrices on basis monomials are invertible for n,k <= 3") {
        for (int n = 1; n <= 3; ++n)
            for (int k = 1; k <= 3; ++k) {
                auto tuples = weakly_increasing_tuples(n, k);
                QMatrix gram(tuples.size(), tuples.size());
                for (std::size_t i = 0; i < tuples.size(); ++i)
                    for (std::size_t j = 0; j < tuples.size(); ++j)
                        gram.at(i, j) = pairing(SymTensor::basis_monomial(n, tuples[i]),
                                                SymTensor::basis_monomial(n, tuples[j]));
                CHECK(rank_of(gram) == tuples.size());
            }
    }
    SUBCASE("degree mismatch is an error") {
        CHECK_THROWS(pairing(SymTensor::basis_monomial(2, {0}), SymTensor::basis_monomial(2, {0, 1})));
    }
}

TEST_CASE("polarize") {
    SUBCASE("x^2 polarizes to uv") {
        auto p = MultiPoly::variable(1, 0) * MultiPoly::variable(1, 0);
        SymTensor k = polarize(p);
        CHECK(k.evaluate({{Rational(3)}, {Rational(5)}}) == Rational(15));
    }
    SUBCASE("xy polarizes to (u1 v2 + u2 v1)/2") {
        auto p = MultiPoly::variable(2, 0) * MultiPoly::variable(2, 1);
        SymTensor k = polarize(p);
        std::vector<Rational> u{Rational(1), Rational(2)}, v{Rational(5), Rational(7)};
        CHECK(k.evaluate({u, v}) == (u[0] * v[1] + u[1] * v[0]) / Rational(2));
    }
    SUBCASE("diagonal restriction of random cubics is the identity") {
        testutil::Rng rng(17);
        for (int t = 0; t < 10; ++t) {
            MultiPoly p(2);
            for (int a = 0; a <= 3; ++a) {
                Expv e{a, 3 - a};
                p = p + MultiPoly::monomial(2, e, rng.rational());
            }
            SymTensor k = polarize(p);
            auto v = rng.qvector(2);
            CHECK(k.evaluate({v, v, v}) == p.evaluate(v));
        }
    }
    SUBCASE("inhomogeneous input is rejected") {
        auto bad = MultiPoly::variable(2, 0) + MultiPoly::constant(2, Rational(1));
        CHECK_THROWS(polarize(bad));
    }
}

TEST_CASE("classical matrix algebras") {
    CHECK(classical_matrix_algebra("co", 3).dim() == 4);
    CHECK(classical_matrix_algebra("o", 4).dim() == 6);
    CHECK(classical_matrix_algebra("gl", 3).dim() == 9);
    CHECK(classical_matrix_algebra("sl", 3).dim() == 8);
    CHECK_THROWS(classical_matrix_algebra("sp", 2));
    auto r1 = rank_one_subspace({Rational(1), Rational(0)}, {Rational(0), Rational(1)});
    CHECK(r1.dim() == 1);
    CHECK(r1.basis[0].at(0, 1) == Rational(1));
    // co(n) and o(n) are closed under the commutator
    CHECK(classical_matrix_algebra("co", 3).closed_under_commutator());
    CHECK(classical_matrix_algebra("o", 4).closed_under_commutator());
}

TEST_CASE("singer-sternberg prolongation levels") {
    SUBCASE("co(3): dim 3 at level 1, zero at level 2") {
        auto co3 = classical_matrix_algebra("co", 3);
        CHECK(ss_prolongation_level(co3, 1).size() == 3);
        CHECK(ss_prolongation_level(co3, 2).empty());
    }
    SUBCASE("span{E11} in gl(2) has the explicit rank-one element at level 2") {
        auto g0 = rank_one_subspace({Rational(1), Rational(0)}, {Rational(1), Rational(0)});
        auto lvl = ss_prolongation_level(g0, 2);
        REQUIRE(lvl.size() == 1);
        // e1 (x) eps1^3 up to scale: only the (upper 0, tuple 000) slot
        const auto& e = lvl[0];
        CHECK(!e.coeff(0, {0, 0, 0}).is_zero());
        CHECK(e.coeff(1, {0, 0, 0}).is_zero());
        CHECK(e.coeff(0, {0, 0, 1}).is_zero());
    }
    SUBCASE("gl(n) levels are unconstrained: dim = n * C(n+k, k+1)") {
        for (int n = 1; n <= 3; ++n) {
            auto gl = classical_matrix_algebra("gl", n);
            for (int k = 0; k <= 3; ++k) {
                auto lvl = ss_prolongation_level(gl, k);
                CHECK(lvl.size() ==
                      static_cast<std::size_t>(n) *
                          static_cast<std::size_t>(count_weakly_increasing(n, k + 1)));
            }
        }
    }
    SUBCASE("every element's slices lie in the span") {
        testutil::Rng rng(3);
        auto co3 = classical_matrix_algebra("co", 3);
        for (const auto& e : ss_prolongation_level(co3, 1)) {
            auto m = e.contract({rng.qvector(3)});
            CHECK(co3.contains(m));
        }
        auto sl2 = classical_matrix_algebra("sl", 2);
        for (const auto& e : ss_prolongation_level(sl2, 2)) {
            auto m = e.contract({rng.qvector(2), rng.qvector(2)});
            CHECK(sl2.contains(m));
        }
    }
}

TEST_CASE("finite type scan") {
    CHECK(finite_type_scan(classical_matrix_algebra("o", 3), 4).finite);
    CHECK(finite_type_scan(classical_matrix_algebra("o", 3), 4).type == 1);
    auto co4 = finite_type_scan(classical_matrix_algebra("co", 4), 4);
    CHECK(co4.finite);
    CHECK(co4.type == 2);
    CHECK(co4.dims == std::vector<std::size_t>{7, 4, 0});

    auto co2 = finite_type_scan(classical_matrix_algebra("co", 2), 4);
    CHECK(!co2.finite);
    CHECK(co2.scanned_to == 4);
    CHECK(co2.dims == std::vector<std::size_t>{2, 2, 2, 2, 2});
}

TEST_CASE("a rank-one matrix forces nonzero levels at every scanned degree") {
    auto g0 = rank_one_subspace({Rational(0), Rational(1)}, {Rational(1), Rational(1)});
    for (int k = 1; k <= 4; ++k) CHECK(!ss_prolongation_level(g0, k).empty());
}

TEST_CASE("matrix subspace file round trip") {
    auto co2 = classical_matrix_algebra("co", 2);
    auto parsed = parse_matrix_subspace(format_matrix_subspace(co2));
    REQUIRE(parsed.dim() == co2.dim());
    for (std::size_t i = 0; i < co2.dim(); ++i) CHECK(parsed.basis[i] == co2.basis[i]);
    CHECK_THROWS(parse_matrix_subspace("1 2\n3 4\n\n1 2 3\n4 5 6\n7 8 9\n"));
}
