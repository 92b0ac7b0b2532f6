#pragma once

#include "carnot/linalg.hpp"
#include "carnot/matrix.hpp"

#include <stdexcept>
#include <vector>

namespace carnot {

// A linear subspace of gl(n) given by an ordered basis of n x n matrices.
template <class F>
struct MatrixSubspaceT {
    std::size_t n = 0;
    std::vector<Matrix<F>> basis;

    MatrixSubspaceT() = default;
    MatrixSubspaceT(std::size_t dim, std::vector<Matrix<F>> b) : n(dim), basis(std::move(b)) {
        for (const auto& m : basis)
            if (m.rows() != n || m.cols() != n)
                throw std::invalid_argument("MatrixSubspace: wrong matrix shape");
        if (!independent())
            throw std::invalid_argument("MatrixSubspace: basis is linearly dependent");
    }

    std::size_t dim() const { return basis.size(); }

    bool independent() const {
        if (basis.empty()) return true;
        std::vector<std::vector<F>> rows;
        for (const auto& m : basis) rows.push_back(m.flat());
        return span_rank(rows) == basis.size();
    }

    std::vector<std::vector<F>> flattened() const {
        std::vector<std::vector<F>> rows;
        for (const auto& m : basis) rows.push_back(m.flat());
        return rows;
    }

    bool contains(const Matrix<F>& m) const {
        return in_span(flattened(), m.flat()).has_value();
    }

    Matrix<F> combine(const std::vector<F>& coords) const {
        if (coords.size() != basis.size())
            throw std::invalid_argument("MatrixSubspace: bad coordinate length");
        Matrix<F> out(n, n);
        for (std::size_t i = 0; i < coords.size(); ++i)
            out = out + basis[i].scaled(coords[i]);
        return out;
    }

    // Closure of the span under the matrix commutator.
    bool closed_under_commutator() const {
        auto rows = flattened();
        for (std::size_t i = 0; i < basis.size(); ++i)
            for (std::size_t j = i + 1; j < basis.size(); ++j)
                if (!in_span(rows, commutator(basis[i], basis[j]).flat())) return false;
        return true;
    }
};

using MatrixSubspace = MatrixSubspaceT<Rational>;

}  // namespace carnot
