#pragma once

#include "carnot/matrix_subspace.hpp"
#include "carnot/symtensor.hpp"

#include <string>
#include <vector>

namespace carnot {

// Element of the k-th prolongation of a matrix subspace: a symmetric
// multilinear map V^(k+1) -> V whose coefficients T^i_J are symmetric in the
// lower indices and whose frozen-lower-index slices lie in the subspace.
template <class F>
struct SSElement {
    int n = 0, k = 0;
    // Layout: coefficient of (upper index i, weakly increasing (k+1)-tuple J)
    // at position i * tuple_count + rank(J).
    std::vector<std::vector<int>> tuples;  // shared tuple table for degree k+1
    std::vector<F> c;

    SSElement() = default;
    SSElement(int dim, int degree)
        : n(dim), k(degree), tuples(weakly_increasing_tuples(dim, degree + 1)) {
        c.assign(static_cast<std::size_t>(n) * tuples.size(), F(0));
    }

    std::size_t tuple_count() const { return tuples.size(); }

    std::size_t rank_of(std::vector<int> tuple) const {
        std::sort(tuple.begin(), tuple.end());
        for (std::size_t r = 0; r < tuples.size(); ++r)
            if (tuples[r] == tuple) return r;
        throw std::invalid_argument("SSElement: bad index tuple");
    }

    const F& coeff(int upper, std::vector<int> tuple) const {
        return c[static_cast<std::size_t>(upper) * tuples.size() + rank_of(std::move(tuple))];
    }
    void set_coeff(int upper, std::vector<int> tuple, const F& v) {
        c[static_cast<std::size_t>(upper) * tuples.size() + rank_of(std::move(tuple))] = v;
    }

    // Endomorphism v -> T(v_1, ..., v_k, v) for frozen basis lower indices.
    Matrix<F> slice(const std::vector<int>& lower) const {
        if (static_cast<int>(lower.size()) != k)
            throw std::invalid_argument("SSElement: slice arity");
        Matrix<F> m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                std::vector<int> t = lower;
                t.push_back(j);
                m.at(i, j) = coeff(i, std::move(t));
            }
        return m;
    }

    // Full multilinear contraction with k general vectors, as an endomorphism.
    Matrix<F> contract(const std::vector<std::vector<F>>& args) const {
        if (static_cast<int>(args.size()) != k)
            throw std::invalid_argument("SSElement: contract arity");
        Matrix<F> m(n, n);
        std::vector<int> idx(k, 0);
        if (k == 0) return slice({});
        while (true) {
            F w(1);
            for (int i = 0; i < k; ++i) w = w * args[i][idx[i]];
            if (!ScalarTraits<F>::is_zero(w)) m = m + slice(idx).scaled(w);
            int i = k - 1;
            while (i >= 0 && idx[i] == n - 1) idx[i--] = 0;
            if (i < 0) break;
            ++idx[i];
        }
        return m;
    }

    bool is_zero() const {
        for (const F& x : c)
            if (!ScalarTraits<F>::is_zero(x)) return false;
        return true;
    }
};

// Basis of the k-th prolongation g^(k); k = 0 returns the input basis.
template <class F>
std::vector<SSElement<F>> ss_prolongation_level(const MatrixSubspaceT<F>& g0, int k);

struct FiniteTypeScan {
    bool finite = false;
    int type = 0;        // smallest k >= 1 with g^(k) = 0, when finite
    int scanned_to = 0;  // last level computed
    std::vector<std::size_t> dims;  // dims[i] = dim g^(i), starting at i = 0
};

// Scans levels 1..max_k, stopping at the first zero level (later levels are
// then zero as well). A truncated scan cannot certify infinite type; an
// Undetermined result (finite = false) says only that no zero level was seen.
FiniteTypeScan finite_type_scan(const MatrixSubspace& g0, int max_k);

// Kinds: "co", "o", "gl", "sl".
MatrixSubspace classical_matrix_algebra(const std::string& kind, std::size_t n);
MatrixSubspace rank_one_subspace(const std::vector<Rational>& v,
                                 const std::vector<Rational>& omega);

// Text format: one matrix per block, rows of space-separated rationals,
// blocks separated by blank lines.
MatrixSubspace parse_matrix_subspace(const std::string& text);
std::string format_matrix_subspace(const MatrixSubspace& s);

}  // namespace carnot
