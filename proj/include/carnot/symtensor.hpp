#pragma once

#include "carnot/multipoly.hpp"
#include "carnot/rational.hpp"

#include <map>
#include <stdexcept>
#include <vector>

namespace carnot {

// Weakly increasing multi-indices over {0..n-1} of a fixed length, enumerated
// in lexicographic order. They index the canonical coefficients of symmetric
// tensors: the coefficient stored at the representative equals the tensor
// coefficient at every permutation of it.
std::vector<std::vector<int>> weakly_increasing_tuples(int n, int k);
long long count_weakly_increasing(int n, int k);  // binomial(n+k-1, k)
// k! / (product of multiplicities!), the number of distinct arrangements.
Rational arrangement_count(const std::vector<int>& sorted_tuple);

class SymTensor {
public:
    SymTensor() = default;
    SymTensor(int n, int degree);

    static SymTensor zero(int n, int degree) { return SymTensor(n, degree); }
    // Symmetric product of basis (co)vectors with the given indices.
    static SymTensor basis_monomial(int n, const std::vector<int>& indices);

    int n() const { return n_; }
    int degree() const { return k_; }
    std::size_t coefficient_count() const { return c_.size(); }

    const Rational& at_rank(std::size_t r) const { return c_[r]; }
    Rational& at_rank(std::size_t r) { return c_[r]; }
    // Tensor coefficient at an arbitrary index tuple (sorted internally).
    const Rational& coefficient(std::vector<int> tuple) const;
    void set_coefficient(std::vector<int> tuple, const Rational& v);

    std::size_t rank_of(const std::vector<int>& sorted_tuple) const;
    const std::vector<int>& tuple_of(std::size_t rank) const { return tuples_[rank]; }

    bool is_zero() const;

    // The associated symmetric multilinear map, evaluated on degree() vectors.
    Rational evaluate(const std::vector<std::vector<Rational>>& args) const;

    SymTensor operator+(const SymTensor& o) const;
    SymTensor operator-(const SymTensor& o) const;
    SymTensor scaled(const Rational& s) const;
    friend bool operator==(const SymTensor& a, const SymTensor& b) {
        return a.n_ == b.n_ && a.k_ == b.k_ && a.c_ == b.c_;
    }

private:
    int n_ = 0, k_ = 0;
    std::vector<std::vector<int>> tuples_;
    std::map<std::vector<int>, std::size_t> rank_;
    std::vector<Rational> c_;
};

// Arbitrary (not necessarily symmetric) tensor given by its coefficient table.
struct DenseTensor {
    int n = 0, degree = 0;
    std::map<std::vector<int>, Rational> entries;
};

// Average over all index permutations; idempotent on symmetric input.
SymTensor symmetrize(const DenseTensor& t);

// Natural pairing of S^k(V) with S^k(V*) in canonical coordinates; it is
// nondegenerate (Gram matrix on basis monomials is invertible).
Rational pairing(const SymTensor& p, const SymTensor& k);

// Symmetric multilinear map whose diagonal restriction is the given
// homogeneous polynomial. Throws on inhomogeneous input.
SymTensor polarize(const MultiPoly& homogeneous);

}  // namespace carnot
