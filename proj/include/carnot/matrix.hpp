#pragma once

#include "carnot/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace carnot {

// Dense matrix over an exact scalar field, row-major. Operations return new values.
template <class F>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = F(1);
        return m;
    }

    static Matrix from_rows(std::initializer_list<std::initializer_list<F>> rows) {
        std::vector<std::vector<F>> rs;
        for (const auto& r : rows) rs.emplace_back(r);
        return from_rows(rs);
    }

    static Matrix from_rows(const std::vector<std::vector<F>>& rows) {
        if (rows.empty()) return Matrix(0, 0);
        Matrix m(rows.size(), rows.front().size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_) throw std::invalid_argument("Matrix: ragged rows");
            for (std::size_t j = 0; j < m.cols_; ++j) m.at(i, j) = rows[i][j];
        }
        return m;
    }

    // Columns are the given vectors.
    static Matrix from_cols(const std::vector<std::vector<F>>& cols) {
        if (cols.empty()) return Matrix(0, 0);
        Matrix m(cols.front().size(), cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j].size() != m.rows_) throw std::invalid_argument("Matrix: ragged columns");
            for (std::size_t i = 0; i < m.rows_; ++i) m.at(i, j) = cols[j][i];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    F& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const F& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    std::vector<F> row(std::size_t i) const {
        return std::vector<F>(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
    }
    std::vector<F> col(std::size_t j) const {
        std::vector<F> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = at(i, j);
        return c;
    }

    const std::vector<F>& flat() const { return a_; }

    bool is_zero() const {
        for (const F& x : a_)
            if (!ScalarTraits<F>::is_zero(x)) return false;
        return true;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    Matrix operator+(const Matrix& o) const {
        check_same_shape(o);
        Matrix r = *this;
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
        return r;
    }

    Matrix operator-(const Matrix& o) const {
        check_same_shape(o);
        Matrix r = *this;
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
        return r;
    }

    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("Matrix: shape mismatch in product");
        Matrix r(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const F& x = at(i, k);
                if (ScalarTraits<F>::is_zero(x)) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) r.at(i, j) += x * o.at(k, j);
            }
        return r;
    }

    Matrix scaled(const F& s) const {
        Matrix r = *this;
        for (F& x : r.a_) x = x * s;
        return r;
    }

    std::vector<F> apply(const std::vector<F>& v) const {
        if (v.size() != cols_) throw std::invalid_argument("Matrix: shape mismatch in apply");
        std::vector<F> r(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r[i] += at(i, j) * v[j];
        return r;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

private:
    void check_same_shape(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("Matrix: shape mismatch");
    }

    std::size_t rows_ = 0, cols_ = 0;
    std::vector<F> a_;
};

using QMatrix = Matrix<Rational>;
using CMatrix = Matrix<GaussianRational>;

// Commutator AB - BA.
template <class F>
Matrix<F> commutator(const Matrix<F>& a, const Matrix<F>& b) {
    return a * b - b * a;
}

template <class F>
Matrix<F> lift(const Matrix<Rational>& m) {
    Matrix<F> r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r.at(i, j) = F(m.at(i, j));
    return r;
}

}  // namespace carnot
