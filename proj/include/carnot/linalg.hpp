#pragma once

#include "carnot/matrix.hpp"

#include <optional>
#include <vector>

namespace carnot {

template <class F>
struct RrefResult {
    Matrix<F> rref;
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_cols;
};

// Gauss-Jordan with normalization after every pivot. The reduced row echelon
// form is unique, so downstream kernel/solution bases are deterministic.
template <class F>
RrefResult<F> rref_and_rank(Matrix<F> m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && ScalarTraits<F>::is_zero(m.at(p, c))) ++p;
        if (p == rows) continue;
        if (p != r)
            for (std::size_t j = c; j < cols; ++j) std::swap(m.at(p, j), m.at(r, j));
        F inv = m.at(r, c).inverse();
        for (std::size_t j = c; j < cols; ++j) m.at(r, j) = m.at(r, j) * inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || ScalarTraits<F>::is_zero(m.at(i, c))) continue;
            F f = m.at(i, c);
            for (std::size_t j = c; j < cols; ++j) m.at(i, j) -= f * m.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return {std::move(m), pivots.size(), std::move(pivots)};
}

template <class F>
std::size_t rank_of(const Matrix<F>& m) {
    return rref_and_rank(m).rank;
}

// Canonical kernel basis from the RREF: one vector per free column, with a 1
// in the free slot and -rref entries in the pivot slots.
template <class F>
std::vector<std::vector<F>> kernel_basis(const Matrix<F>& m) {
    RrefResult<F> rr = rref_and_rank(m);
    const std::size_t cols = m.cols();
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : rr.pivot_cols) is_pivot[c] = true;
    std::vector<std::vector<F>> basis;
    for (std::size_t c = 0; c < cols; ++c) {
        if (is_pivot[c]) continue;
        std::vector<F> v(cols);
        v[c] = F(1);
        for (std::size_t i = 0; i < rr.rank; ++i) v[rr.pivot_cols[i]] = -rr.rref.at(i, c);
        basis.push_back(std::move(v));
    }
    return basis;
}

// Particular solution of m x = rhs (free variables set to zero), or nullopt
// when rhs is outside the column space.
template <class F>
std::optional<std::vector<F>> solve_linear(const Matrix<F>& m, const std::vector<F>& rhs) {
    if (rhs.size() != m.rows()) throw std::invalid_argument("solve_linear: rhs length mismatch");
    Matrix<F> aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols()) = rhs[i];
    }
    RrefResult<F> rr = rref_and_rank(std::move(aug));
    for (std::size_t c : rr.pivot_cols)
        if (c == m.cols()) return std::nullopt;
    std::vector<F> x(m.cols());
    for (std::size_t i = 0; i < rr.rank; ++i) x[rr.pivot_cols[i]] = rr.rref.at(i, m.cols());
    return x;
}

// Coordinates of v in the given spanning set, if v lies in its span.
template <class F>
std::optional<std::vector<F>> in_span(const std::vector<std::vector<F>>& span,
                                      const std::vector<F>& v) {
    if (span.empty()) {
        for (const F& x : v)
            if (!ScalarTraits<F>::is_zero(x)) return std::nullopt;
        return std::vector<F>{};
    }
    return solve_linear(Matrix<F>::from_cols(span), v);
}

template <class F>
std::size_t span_rank(const std::vector<std::vector<F>>& vectors) {
    if (vectors.empty()) return 0;
    return rank_of(Matrix<F>::from_rows(vectors));
}

// Canonical basis of the span: the nonzero rows of the RREF.
template <class F>
std::vector<std::vector<F>> span_rref(const std::vector<std::vector<F>>& vectors) {
    if (vectors.empty()) return {};
    RrefResult<F> rr = rref_and_rank(Matrix<F>::from_rows(vectors));
    std::vector<std::vector<F>> out;
    for (std::size_t i = 0; i < rr.rank; ++i) out.push_back(rr.rref.row(i));
    return out;
}

template <class F>
bool same_span(const std::vector<std::vector<F>>& a, const std::vector<std::vector<F>>& b) {
    return span_rref(a) == span_rref(b);
}

// Basis of span(a) intersect span(b): kernel vectors of [A | -B] give pairs of
// coordinates whose A-part lands in the intersection.
template <class F>
std::vector<std::vector<F>> subspace_intersection(const std::vector<std::vector<F>>& a,
                                                  const std::vector<std::vector<F>>& b) {
    if (a.empty() || b.empty()) return {};
    const std::size_t n = a.front().size();
    Matrix<F> m(n, a.size() + b.size());
    for (std::size_t j = 0; j < a.size(); ++j)
        for (std::size_t i = 0; i < n; ++i) m.at(i, j) = a[j][i];
    for (std::size_t j = 0; j < b.size(); ++j)
        for (std::size_t i = 0; i < n; ++i) m.at(i, a.size() + j) = -b[j][i];
    std::vector<std::vector<F>> vecs;
    for (const auto& k : kernel_basis(m)) {
        std::vector<F> v(n);
        for (std::size_t j = 0; j < a.size(); ++j)
            for (std::size_t i = 0; i < n; ++i) v[i] += k[j] * a[j][i];
        vecs.push_back(std::move(v));
    }
    return span_rref(vecs);
}

template <class F>
std::optional<Matrix<F>> inverse(const Matrix<F>& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    const std::size_t n = m.rows();
    Matrix<F> aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = F(1);
    }
    RrefResult<F> rr = rref_and_rank(std::move(aug));
    if (rr.rank != n) return std::nullopt;
    Matrix<F> inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = rr.rref.at(i, n + j);
    return inv;
}

// Factors m x = b once so that many right-hand sides can be solved cheaply:
// row-reducing [m | I] yields E with E m = rref(m), and consistency/solution
// read off from E b.
template <class F>
class PreparedSolver {
public:
    explicit PreparedSolver(const Matrix<F>& m) : cols_(m.cols()), rows_(m.rows()) {
        Matrix<F> aug(m.rows(), m.cols() + m.rows());
        for (std::size_t i = 0; i < m.rows(); ++i) {
            for (std::size_t j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
            aug.at(i, m.cols() + i) = F(1);
        }
        // Reduce only the leading block; pivots never enter the identity part
        // because its columns are ignored by the pivot scan below.
        std::size_t r = 0;
        std::vector<std::size_t> pivots;
        for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
            std::size_t p = r;
            while (p < m.rows() && ScalarTraits<F>::is_zero(aug.at(p, c))) ++p;
            if (p == m.rows()) continue;
            if (p != r)
                for (std::size_t j = 0; j < aug.cols(); ++j) std::swap(aug.at(p, j), aug.at(r, j));
            F inv = aug.at(r, c).inverse();
            for (std::size_t j = 0; j < aug.cols(); ++j) aug.at(r, j) = aug.at(r, j) * inv;
            for (std::size_t i = 0; i < m.rows(); ++i) {
                if (i == r || ScalarTraits<F>::is_zero(aug.at(i, c))) continue;
                F f = aug.at(i, c);
                for (std::size_t j = 0; j < aug.cols(); ++j) aug.at(i, j) -= f * aug.at(r, j);
            }
            pivots.push_back(c);
            ++r;
        }
        pivots_ = std::move(pivots);
        e_ = Matrix<F>(m.rows(), m.rows());
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.rows(); ++j) e_.at(i, j) = aug.at(i, m.cols() + j);
    }

    std::optional<std::vector<F>> solve(const std::vector<F>& rhs) const {
        if (rhs.size() != rows_) throw std::invalid_argument("PreparedSolver: rhs length");
        std::vector<F> eb = e_.apply(rhs);
        for (std::size_t i = pivots_.size(); i < rows_; ++i)
            if (!ScalarTraits<F>::is_zero(eb[i])) return std::nullopt;
        std::vector<F> x(cols_);
        for (std::size_t i = 0; i < pivots_.size(); ++i) x[pivots_[i]] = eb[i];
        return x;
    }

private:
    std::size_t cols_, rows_;
    std::vector<std::size_t> pivots_;
    Matrix<F> e_;
};

// Linear projection of F^N onto coordinates for F^N / span(rows); the kernel
// of project() is exactly the span.
template <class F>
class QuotientMap {
public:
    QuotientMap(std::size_t ambient, const std::vector<std::vector<F>>& spanning)
        : ambient_(ambient) {
        std::vector<std::vector<F>> rows;
        for (const auto& v : spanning) {
            if (v.size() != ambient) throw std::invalid_argument("QuotientMap: bad vector length");
            rows.push_back(v);
        }
        if (!rows.empty()) {
            RrefResult<F> rr = rref_and_rank(Matrix<F>::from_rows(rows));
            reduced_ = std::move(rr.rref);
            pivots_ = std::move(rr.pivot_cols);
        }
        std::vector<bool> is_pivot(ambient_, false);
        for (std::size_t c : pivots_) is_pivot[c] = true;
        for (std::size_t c = 0; c < ambient_; ++c)
            if (!is_pivot[c]) free_cols_.push_back(c);
    }

    std::size_t ambient() const { return ambient_; }
    std::size_t dim() const { return free_cols_.size(); }

    std::vector<F> project(const std::vector<F>& v) const {
        if (v.size() != ambient_) throw std::invalid_argument("QuotientMap: bad vector length");
        std::vector<F> w = v;
        for (std::size_t i = 0; i < pivots_.size(); ++i) {
            F f = w[pivots_[i]];
            if (ScalarTraits<F>::is_zero(f)) continue;
            for (std::size_t j = 0; j < ambient_; ++j) w[j] -= f * reduced_.at(i, j);
        }
        std::vector<F> out(free_cols_.size());
        for (std::size_t j = 0; j < free_cols_.size(); ++j) out[j] = w[free_cols_[j]];
        return out;
    }

private:
    std::size_t ambient_;
    Matrix<F> reduced_;
    std::vector<std::size_t> pivots_;
    std::vector<std::size_t> free_cols_;
};

}  // namespace carnot
