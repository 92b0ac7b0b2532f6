#include "carnot/rigidity.hpp"

#include "carnot/derivations.hpp"
#include "carnot/linalg.hpp"

#include <algorithm>
#include <set>

namespace carnot {

namespace {

// All 2x2 minors of a matrix with MultiPoly entries, monic and deduplicated.
std::vector<MultiPoly> two_by_two_minors(const std::vector<std::vector<MultiPoly>>& m, int nvars) {
    std::vector<MultiPoly> out;
    std::set<std::vector<std::pair<Expv, Rational>>> seen;
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m.front().size() : 0;
    for (std::size_t r1 = 0; r1 < rows; ++r1)
        for (std::size_t r2 = r1 + 1; r2 < rows; ++r2)
            for (std::size_t c1 = 0; c1 < cols; ++c1)
                for (std::size_t c2 = c1 + 1; c2 < cols; ++c2) {
                    MultiPoly d = m[r1][c1] * m[r2][c2] - m[r1][c2] * m[r2][c1];
                    if (d.is_zero()) continue;
                    d = d.monic(MonoOrder::Grevlex);
                    if (seen.insert(d.terms()).second) out.push_back(std::move(d));
                }
    (void)nvars;
    return out;
}

MultiPoly det_poly(const std::vector<std::vector<MultiPoly>>& m, int nvars) {
    const std::size_t n = m.size();
    if (n == 0) return MultiPoly::constant(nvars, Rational(1));
    if (n == 1) return m[0][0];
    MultiPoly acc(nvars);
    for (std::size_t j = 0; j < n; ++j) {
        if (m[0][j].is_zero()) continue;
        std::vector<std::vector<MultiPoly>> sub;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<MultiPoly> row;
            for (std::size_t c = 0; c < n; ++c)
                if (c != j) row.push_back(m[r][c]);
            sub.push_back(std::move(row));
        }
        MultiPoly term = m[0][j] * det_poly(sub, nvars);
        acc = (j % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

struct SplitMix64 {
    unsigned long long state;
    explicit SplitMix64(unsigned long long seed) : state(seed) {}
    unsigned long long next() {
        unsigned long long z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    long small(long lo, long hi) {  // inclusive
        return lo + static_cast<long>(next() % static_cast<unsigned long long>(hi - lo + 1));
    }
};

std::vector<GaussianRational> lift_to_full(const GradedLieAlgebra& a,
                                           const std::vector<GaussianRational>& g1_coords) {
    std::vector<GaussianRational> full(a.dim(), GaussianRational(0));
    for (std::size_t i = 0; i < g1_coords.size(); ++i)
        full[a.stratum_offset(1) + i] = g1_coords[i];
    return full;
}

bool rank_at_most_one(const GradedLieAlgebra& a, const std::vector<GaussianRational>& g1_coords) {
    return rank_of(a.ad(lift_to_full(a, g1_coords))) <= 1;
}

bool nonzero_vec(const std::vector<GaussianRational>& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return true;
    return false;
}

}  // namespace

std::vector<MultiPoly> minor_ideal_adX(const GradedLieAlgebra& a) {
    const int d1 = static_cast<int>(a.stratum_dim(1));
    const std::size_t off = a.stratum_offset(1);
    // Entry (m, b) of ad(sum x_i e_i) is sum_i x_i * c[e_i, e_b]_m.
    std::vector<std::vector<MultiPoly>> entries(
        a.dim(), std::vector<MultiPoly>(a.dim(), MultiPoly(d1)));
    for (int i = 0; i < d1; ++i)
        for (std::size_t b = 0; b < a.dim(); ++b) {
            const auto& c = a.bracket_basis(off + i, b);
            for (std::size_t m = 0; m < a.dim(); ++m)
                if (!c[m].is_zero())
                    entries[m][b] = entries[m][b] + MultiPoly::variable(d1, i).scaled(c[m]);
        }
    return two_by_two_minors(entries, d1);
}

std::vector<MultiPoly> minor_ideal_h0(const MatrixSubspace& h0) {
    const int nv = static_cast<int>(h0.dim());
    if (nv == 0) return {};
    std::vector<std::vector<MultiPoly>> entries(
        h0.n, std::vector<MultiPoly>(h0.n, MultiPoly(nv)));
    for (int q = 0; q < nv; ++q)
        for (std::size_t i = 0; i < h0.n; ++i)
            for (std::size_t j = 0; j < h0.n; ++j) {
                const Rational& c = h0.basis[q].at(i, j);
                if (!c.is_zero())
                    entries[i][j] = entries[i][j] + MultiPoly::variable(nv, q).scaled(c);
            }
    return two_by_two_minors(entries, nv);
}

MultiPoly characteristic_certificate(const MatrixSubspace& g0, const std::vector<Rational>& xi) {
    const std::size_t n = g0.n;
    if (xi.size() != n) throw std::invalid_argument("characteristic_certificate: bad covector");
    QuotientMap<Rational> quo(n * n, g0.flattened());
    const std::size_t q = quo.dim();

    // sigma_eta(e_j) = projection of e_j (x) eta; precompute unit projections.
    std::vector<std::vector<Rational>> unit_proj(n * n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t l = 0; l < n; ++l) {
            std::vector<Rational> e(n * n, Rational(0));
            e[j * n + l] = Rational(1);
            unit_proj[j * n + l] = quo.project(e);
        }

    QMatrix sigma_xi(q, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t l = 0; l < n; ++l) {
            if (xi[l].is_zero()) continue;
            for (std::size_t r = 0; r < q; ++r)
                sigma_xi.at(r, j) += xi[l] * unit_proj[j * n + l][r];
        }
    if (rank_of(sigma_xi) != n)
        throw CharacteristicInput("xi is a characteristic covector: sigma_xi is not injective");

    // Left inverse B: solve sigma_xi^t b_i = e_i for each row of B.
    QMatrix b(n, q);
    QMatrix st = sigma_xi.transpose();
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Rational> rhs(n, Rational(0));
        rhs[i] = Rational(1);
        auto row = solve_linear(st, rhs);
        if (!row) throw std::logic_error("characteristic_certificate: left inverse must exist");
        for (std::size_t c = 0; c < q; ++c) b.at(i, c) = (*row)[c];
    }

    // Entries of B o sigma_eta are linear forms in eta's coordinates.
    const int nv = static_cast<int>(n);
    std::vector<std::vector<MultiPoly>> m(n, std::vector<MultiPoly>(n, MultiPoly(nv)));
    for (std::size_t l = 0; l < n; ++l) {
        // Column contribution of eta_l: B * sigma_{eps_l}.
        QMatrix sl(q, n);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t r = 0; r < q; ++r) sl.at(r, j) = unit_proj[j * n + l][r];
        QMatrix bl = b * sl;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (!bl.at(i, j).is_zero())
                    m[i][j] = m[i][j] +
                              MultiPoly::variable(nv, static_cast<int>(l)).scaled(bl.at(i, j));
    }
    MultiPoly p = det_poly(m, nv);
    if (p.evaluate(xi) != Rational(1))
        throw std::logic_error("characteristic_certificate: P(xi) != 1");
    return p;
}

std::optional<std::vector<GaussianRational>> witness_search(const GradedLieAlgebra& a,
                                                            const WitnessOptions& opt) {
    const std::size_t d1 = a.stratum_dim(1);
    auto check = [&](std::vector<GaussianRational> v) -> std::optional<std::vector<GaussianRational>> {
        if (nonzero_vec(v) && rank_at_most_one(a, v)) return v;
        return std::nullopt;
    };

    // Single basis directions.
    for (std::size_t i = 0; i < d1; ++i) {
        std::vector<GaussianRational> v(d1, GaussianRational(0));
        v[i] = GaussianRational(1);
        if (auto w = check(std::move(v))) return w;
    }
    // Sparse support of size two with unit and imaginary-unit coefficients.
    const GaussianRational coeffs[] = {GaussianRational(1), GaussianRational(-1),
                                       GaussianRational::i(), -GaussianRational::i(),
                                       GaussianRational(2), GaussianRational(Rational(1, 2))};
    for (std::size_t i = 0; i < d1; ++i)
        for (std::size_t j = 0; j < d1; ++j) {
            if (i == j) continue;
            for (const auto& c : coeffs) {
                std::vector<GaussianRational> v(d1, GaussianRational(0));
                v[i] = GaussianRational(1);
                v[j] = c;
                if (auto w = check(std::move(v))) return w;
            }
        }
    // Random small-height points, real and complex.
    SplitMix64 rng(opt.seed);
    for (int trial = 0; trial < opt.random_budget; ++trial) {
        std::vector<GaussianRational> v(d1);
        bool complex_trial = trial % 2 == 1;
        for (std::size_t i = 0; i < d1; ++i) {
            Rational re(rng.small(-3, 3), rng.small(1, 3));
            Rational im = complex_trial ? Rational(rng.small(-3, 3), rng.small(1, 3)) : Rational(0);
            v[i] = GaussianRational(re, im);
        }
        if (auto w = check(std::move(v))) return w;
    }
    return std::nullopt;
}

std::string to_string(VerdictKind k) {
    switch (k) {
        case VerdictKind::Rigid: return "Rigid";
        case VerdictKind::NonrigidDegenerate: return "NonrigidDegenerate";
        case VerdictKind::NonrigidRankOne: return "NonrigidRankOne";
    }
    return "?";
}

RigidityVerdict rigidity_verdict(const GradedLieAlgebra& a, const VerdictOptions& opt) {
    RigidityVerdict v;
    const std::size_t d1 = a.stratum_dim(1);

    // Fast nonrigidity exit: nontrivial degenerate elements.
    auto deg = degenerate_subspace(a);
    if (!deg.empty()) {
        v.kind = VerdictKind::NonrigidDegenerate;
        v.criteria.push_back("degenerate-subspace");
        std::vector<GaussianRational> w(d1);
        for (std::size_t i = 0; i < d1; ++i) w[i] = GaussianRational(deg.front()[i]);
        if (!rank_at_most_one(a, w)) throw std::logic_error("degenerate witness fails re-check");
        v.witness = std::move(w);
        if (opt.cross_check) v.cross_check_agrees = true;  // resolved before the ideals
        return v;
    }

    auto h0 = h_zero(a);
    bool nonrigid = false;
    bool decided = false;

    // Dimension bound: dim h^(0) > d1^2 - d1 forces every covector to be a
    // characteristic, hence infinite type.
    if (h0.identified.dim() > d1 * d1 - d1) {
        nonrigid = true;
        decided = true;
        v.criteria.push_back("dimension-bound");
    }

    bool iii_nonrigid = false;
    if (!decided || opt.cross_check) {
        auto gens = minor_ideal_adX(a);
        GroebnerResult gb;
        iii_nonrigid = !only_origin(static_cast<int>(d1), gens, opt.gb, &gb);
        v.gb.steps += gb.steps;
        v.gb.basis_size += gb.basis.size();
        v.criteria.push_back(std::string("minor-ideal-adX:") +
                             (iii_nonrigid ? "nonzero-variety" : "only-origin"));
        if (!decided) {
            nonrigid = iii_nonrigid;
            decided = true;
        } else if (iii_nonrigid != nonrigid) {
            throw std::logic_error("dimension bound and ad-minor ideal disagree");
        }
    }

    if (opt.cross_check) {
        bool ii_nonrigid;
        if (h0.identified.dim() == 0) {
            ii_nonrigid = false;
            v.criteria.push_back("minor-ideal-h0:empty-subspace");
        } else {
            auto gens2 = minor_ideal_h0(h0.identified);
            GroebnerResult gb2;
            ii_nonrigid = !only_origin(static_cast<int>(h0.identified.dim()), gens2, opt.gb, &gb2);
            v.gb.steps += gb2.steps;
            v.gb.basis_size += gb2.basis.size();
            v.criteria.push_back(std::string("minor-ideal-h0:") +
                                 (ii_nonrigid ? "nonzero-variety" : "only-origin"));
        }
        v.cross_check_agrees = (ii_nonrigid == nonrigid);
        if (!*v.cross_check_agrees)
            throw std::logic_error("criteria (ii) and (iii) disagree on " + a.name());
    }

    v.kind = nonrigid ? VerdictKind::NonrigidRankOne : VerdictKind::Rigid;
    if (nonrigid && opt.find_witness) {
        auto w = witness_search(a, opt.witness);
        if (w) {
            if (!rank_at_most_one(a, *w)) throw std::logic_error("witness fails exact re-check");
            v.witness = std::move(w);
        }
    }
    return v;
}

}  // namespace carnot
