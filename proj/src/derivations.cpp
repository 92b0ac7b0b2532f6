#include "carnot/derivations.hpp"

namespace carnot {

namespace {

// Unknown layout for a strata derivation: the blocks row-major, stratum by stratum.
struct UnknownLayout {
    std::vector<std::size_t> block_start;  // per stratum (1-based index - 1)
    std::size_t total = 0;

    explicit UnknownLayout(const GradedLieAlgebra& a) {
        for (int j = 1; j <= a.step(); ++j) {
            block_start.push_back(total);
            total += a.stratum_dim(j) * a.stratum_dim(j);
        }
    }

    // Index of entry (r, c) of block j: coefficient of e_{off_j + r} in D(e_{off_j + c}).
    std::size_t at(const GradedLieAlgebra& a, int j, std::size_t r, std::size_t c) const {
        return block_start[j - 1] + r * a.stratum_dim(j) + c;
    }
};

// Rows of the Leibniz system D[x_a, x_b] = [D x_a, x_b] + [x_a, D x_b] over
// all basis pairs a < b, one row per nonzero target component.
QMatrix leibniz_system(const GradedLieAlgebra& a, const UnknownLayout& lay,
                       std::size_t extra_cols) {
    const std::size_t d = a.dim();
    std::vector<std::vector<Rational>> rows;
    for (std::size_t p = 0; p < d; ++p)
        for (std::size_t q = p + 1; q < d; ++q) {
            int jp = a.stratum_of(p), jq = a.stratum_of(q);
            std::vector<std::vector<Rational>> eq(d,
                                                  std::vector<Rational>(lay.total + extra_cols));
            // D([x_p, x_q]) term.
            const auto& cpq = a.bracket_basis(p, q);
            for (std::size_t t = 0; t < d; ++t) {
                if (cpq[t].is_zero()) continue;
                int jt = a.stratum_of(t);
                std::size_t loc_t = t - a.stratum_offset(jt);
                for (std::size_t r = 0; r < a.stratum_dim(jt); ++r)
                    eq[a.stratum_offset(jt) + r][lay.at(a, jt, r, loc_t)] += cpq[t];
            }
            // -[D x_p, x_q]: D x_p = sum_r U_jp[r, loc_p] e_{off+r}.
            std::size_t loc_p = p - a.stratum_offset(jp);
            for (std::size_t r = 0; r < a.stratum_dim(jp); ++r) {
                const auto& v = a.bracket_basis(a.stratum_offset(jp) + r, q);
                for (std::size_t m = 0; m < d; ++m)
                    if (!v[m].is_zero()) eq[m][lay.at(a, jp, r, loc_p)] -= v[m];
            }
            // -[x_p, D x_q] = +[D x_q, x_p].
            std::size_t loc_q = q - a.stratum_offset(jq);
            for (std::size_t r = 0; r < a.stratum_dim(jq); ++r) {
                const auto& v = a.bracket_basis(a.stratum_offset(jq) + r, p);
                for (std::size_t m = 0; m < d; ++m)
                    if (!v[m].is_zero()) eq[m][lay.at(a, jq, r, loc_q)] += v[m];
            }
            for (auto& row : eq) {
                bool nonzero = false;
                for (const auto& x : row)
                    if (!x.is_zero()) nonzero = true;
                if (nonzero) rows.push_back(std::move(row));
            }
        }
    if (rows.empty()) return QMatrix(0, lay.total + extra_cols);
    return QMatrix::from_rows(rows);
}

}  // namespace

std::vector<StrataDerivation> strata_derivations(const GradedLieAlgebra& a) {
    UnknownLayout lay(a);
    QMatrix sys = leibniz_system(a, lay, 0);
    std::vector<StrataDerivation> out;
    for (const auto& v : kernel_basis(sys)) out.push_back(StrataDerivation::unflatten(a, v));
    return out;
}

HZero h_zero(const GradedLieAlgebra& a) {
    auto g0 = strata_derivations(a);
    // Kernel of the map (coefficients) -> entries of the blocks on strata >= 2.
    std::size_t deep_entries = 0;
    for (int j = 2; j <= a.step(); ++j) deep_entries += a.stratum_dim(j) * a.stratum_dim(j);
    QMatrix m(deep_entries == 0 ? 0 : deep_entries, g0.size());
    for (std::size_t i = 0; i < g0.size(); ++i) {
        std::size_t r = 0;
        for (int j = 2; j <= a.step(); ++j)
            for (const auto& x : g0[i].blocks[j - 1].flat()) m.at(r++, i) = x;
    }

    HZero h;
    std::vector<std::vector<Rational>> first_blocks;
    for (const auto& combo : kernel_basis(m)) {
        StrataDerivation d;
        std::vector<QMatrix> blocks;
        for (int j = 1; j <= a.step(); ++j)
            blocks.emplace_back(a.stratum_dim(j), a.stratum_dim(j));
        for (std::size_t i = 0; i < g0.size(); ++i) {
            if (combo[i].is_zero()) continue;
            for (int j = 1; j <= a.step(); ++j)
                blocks[j - 1] = blocks[j - 1] + g0[i].blocks[j - 1].scaled(combo[i]);
        }
        d.blocks = std::move(blocks);
        first_blocks.push_back(d.blocks[0].flat());
        h.basis.push_back(std::move(d));
    }

    if (span_rank(first_blocks) != h.basis.size())
        throw IdentificationNotInjective(
            "restriction of h_0 to g_{-1} is not injective; the algebra cannot be bracket "
            "generating");

    std::vector<QMatrix> ident;
    for (const auto& d : h.basis) ident.push_back(d.blocks[0]);
    h.identified = MatrixSubspace(a.stratum_dim(1), std::move(ident));
    return h;
}

std::vector<StrataDerivation> conformal_subalgebra(const GradedLieAlgebra& a) {
    UnknownLayout lay(a);
    // One extra unknown: the scale lambda in B + B^t = lambda I.
    QMatrix leib = leibniz_system(a, lay, 1);
    const std::size_t d1 = a.stratum_dim(1);
    std::size_t co_rows = d1 * (d1 + 1) / 2;
    QMatrix sys(leib.rows() + co_rows, lay.total + 1);
    for (std::size_t i = 0; i < leib.rows(); ++i)
        for (std::size_t j = 0; j < leib.cols(); ++j) sys.at(i, j) = leib.at(i, j);
    std::size_t r = leib.rows();
    for (std::size_t p = 0; p < d1; ++p)
        for (std::size_t q = p; q < d1; ++q) {
            sys.at(r, lay.at(a, 1, p, q)) += Rational(1);
            sys.at(r, lay.at(a, 1, q, p)) += Rational(1);
            if (p == q) sys.at(r, lay.total) = Rational(-1);
            ++r;
        }
    std::vector<StrataDerivation> out;
    for (const auto& v : kernel_basis(sys)) {
        std::vector<Rational> data(v.begin(), v.end() - 1);
        out.push_back(StrataDerivation::unflatten(a, data));
    }
    return out;
}

std::vector<StrataDerivation> derivations_with_horizontal_part_in(
    const GradedLieAlgebra& a, const MatrixSubspace& horizontal) {
    const std::size_t d1 = a.stratum_dim(1);
    if (horizontal.n != d1)
        throw std::invalid_argument("derivations_with_horizontal_part_in: dimension mismatch");
    UnknownLayout lay(a);
    QMatrix leib = leibniz_system(a, lay, 0);

    QuotientMap<Rational> quo(d1 * d1, horizontal.flattened());
    QMatrix sys(leib.rows() + quo.dim(), lay.total);
    for (std::size_t i = 0; i < leib.rows(); ++i)
        for (std::size_t j = 0; j < leib.cols(); ++j) sys.at(i, j) = leib.at(i, j);
    for (std::size_t p = 0; p < d1; ++p)
        for (std::size_t q = 0; q < d1; ++q) {
            std::vector<Rational> e(d1 * d1, Rational(0));
            e[p * d1 + q] = Rational(1);
            auto proj = quo.project(e);
            for (std::size_t r = 0; r < proj.size(); ++r)
                if (!proj[r].is_zero()) sys.at(leib.rows() + r, lay.at(a, 1, p, q)) += proj[r];
        }
    std::vector<StrataDerivation> out;
    for (const auto& v : kernel_basis(sys)) out.push_back(StrataDerivation::unflatten(a, v));
    return out;
}

bool derivation_in_span(const GradedLieAlgebra& a, const std::vector<StrataDerivation>& span,
                        const StrataDerivation& d) {
    std::vector<std::vector<Rational>> rows;
    for (const auto& s : span) rows.push_back(s.flatten());
    return in_span(rows, d.flatten()).has_value();
}

}  // namespace carnot
