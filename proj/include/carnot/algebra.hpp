#pragma once

#include "carnot/linalg.hpp"
#include "carnot/matrix.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace carnot {

struct ParseError : std::runtime_error {
    ParseError(int line_no, int col_no, const std::string& message)
        : std::runtime_error("line " + std::to_string(line_no) + ", col " +
                             std::to_string(col_no) + ": " + message),
          line(line_no),
          col(col_no) {}
    int line;
    int col;
};

struct ValidationIssue {
    enum class Kind { Antisymmetry, Grading, Jacobi, BracketGeneration, Centre };
    Kind kind;
    std::string detail;
};

std::string to_string(ValidationIssue::Kind k);

struct ValidationError : std::runtime_error {
    explicit ValidationError(std::vector<ValidationIssue> found);
    std::vector<ValidationIssue> issues;
};

// Stratified nilpotent Lie algebra n = g_{-s} + ... + g_{-1} with an explicit
// ordered basis per stratum and exact rational structure constants. Immutable
// once built; all operations are pure.
class GradedLieAlgebra {
public:
    class Builder {
    public:
        Builder& name(std::string n);
        // Strata are added in order j = 1, 2, ...; each call lists a basis of g_{-j}.
        Builder& stratum(std::vector<std::string> names);
        // Sets [x, y]; the reversed bracket is filled in automatically.
        Builder& bracket(const std::string& x, const std::string& y,
                         std::vector<std::pair<Rational, std::string>> terms);
        GradedLieAlgebra build(bool validate = true) const;

    private:
        friend class GradedLieAlgebra;
        std::string name_ = "unnamed";
        std::vector<std::vector<std::string>> strata_;
        std::vector<std::tuple<std::string, std::string, std::vector<std::pair<Rational, std::string>>>>
            brackets_;
    };

    const std::string& name() const { return name_; }
    int step() const { return static_cast<int>(strata_.size()); }
    std::size_t dim() const { return names_.size(); }
    std::size_t stratum_dim(int j) const { return strata_.at(j - 1).size(); }
    std::size_t stratum_offset(int j) const { return offsets_.at(j - 1); }
    int stratum_of(std::size_t index) const { return depth_.at(index); }
    const std::string& basis_name(std::size_t index) const { return names_.at(index); }
    const std::vector<std::string>& basis_names() const { return names_; }
    std::optional<std::size_t> index_of(const std::string& name) const;

    // [e_i, e_j] as a dim()-length coordinate vector.
    const std::vector<Rational>& bracket_basis(std::size_t i, std::size_t j) const {
        return c_.at(i).at(j);
    }

    template <class F>
    std::vector<F> bracket(const std::vector<F>& v, const std::vector<F>& w) const {
        if (v.size() != dim() || w.size() != dim())
            throw std::invalid_argument("bracket: wrong element dimension");
        std::vector<F> out(dim(), F(0));
        for (std::size_t i = 0; i < dim(); ++i) {
            if (ScalarTraits<F>::is_zero(v[i])) continue;
            for (std::size_t j = 0; j < dim(); ++j) {
                if (ScalarTraits<F>::is_zero(w[j])) continue;
                F vw = v[i] * w[j];
                const auto& c = c_[i][j];
                for (std::size_t m = 0; m < dim(); ++m)
                    if (!c[m].is_zero()) out[m] += vw * F(c[m]);
            }
        }
        return out;
    }

    // Matrix of w -> [v, w] in the full graded basis (columns are images).
    template <class F>
    Matrix<F> ad(const std::vector<F>& v) const {
        Matrix<F> m(dim(), dim());
        for (std::size_t j = 0; j < dim(); ++j) {
            std::vector<F> ej(dim(), F(0));
            ej[j] = F(1);
            std::vector<F> img = bracket(v, ej);
            for (std::size_t i = 0; i < dim(); ++i) m.at(i, j) = img[i];
        }
        return m;
    }

    std::vector<ValidationIssue> validate() const;
    std::string serialize() const;

private:
    friend class BuilderAccess;
    std::string name_;
    std::vector<std::vector<std::string>> strata_;
    std::vector<std::string> names_;
    std::vector<std::size_t> offsets_;
    std::vector<int> depth_;
    std::map<std::string, std::size_t> index_;
    // c_[i][j] = coordinates of [e_i, e_j]; dense, antisymmetric by construction.
    std::vector<std::vector<std::vector<Rational>>> c_;
};

// Parses the line-oriented algebra file format. When validate is set (the
// default) the structural invariants are checked and a ValidationError is
// thrown on failure.
GradedLieAlgebra parse_algebra(const std::string& text, bool validate = true);
std::vector<ValidationIssue> validate_structure(const GradedLieAlgebra& a);

// Basis of {X in g_{-1} : [X, g_{-1}] = 0}, as coordinates over the g_{-1}
// basis. Nonempty output certifies nonrigidity outright.
std::vector<std::vector<Rational>> degenerate_subspace(const GradedLieAlgebra& a);

// Strata-preserving linear map, one square block per stratum.
struct StrataDerivation {
    std::vector<QMatrix> blocks;

    QMatrix full_matrix(const GradedLieAlgebra& a) const;
    std::vector<Rational> apply(const GradedLieAlgebra& a, const std::vector<Rational>& v) const;
    std::vector<Rational> flatten() const;
    static StrataDerivation unflatten(const GradedLieAlgebra& a, const std::vector<Rational>& data);
};

// Leibniz rule D[X,Y] = [DX,Y] + [X,DY], checked directly on all basis pairs.
bool is_derivation(const GradedLieAlgebra& a, const StrataDerivation& d);

// The dilation generator: j * identity on g_{-j}.
StrataDerivation grading_derivation(const GradedLieAlgebra& a);

// Catalog keys: abelian:N, heisenberg:N (N odd), free_two_step:M, engel,
// complex_heisenberg_real, product_with_abelian:<base-key>:K.
GradedLieAlgebra catalog_build(const std::string& key);
std::vector<std::string> catalog_names();

}  // namespace carnot
