#pragma once

#include "carnot/rational.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace carnot {

using Expv = std::vector<int>;  // exponent vector, one slot per variable

enum class MonoOrder { Grevlex, Lex };

int mono_deg(const Expv& e);
// -1, 0, +1 for a < b, a == b, a > b under the given order.
int mono_cmp(MonoOrder order, const Expv& a, const Expv& b);
bool mono_divides(const Expv& a, const Expv& b);  // a | b
Expv mono_mul(const Expv& a, const Expv& b);
Expv mono_div(const Expv& a, const Expv& b);  // a / b, requires b | a
Expv mono_lcm(const Expv& a, const Expv& b);
bool mono_coprime(const Expv& a, const Expv& b);

// Multivariate polynomial over exact rationals. Terms are kept sorted in
// descending grevlex with no zero coefficients, which makes equality and
// printing canonical regardless of construction order.
class MultiPoly {
public:
    using Term = std::pair<Expv, Rational>;

    explicit MultiPoly(int nvars = 0) : n_(nvars) {}
    static MultiPoly constant(int nvars, const Rational& c);
    static MultiPoly variable(int nvars, int i);
    static MultiPoly monomial(int nvars, Expv e, const Rational& c);
    static MultiPoly from_terms(int nvars, std::vector<Term> terms);

    int nvars() const { return n_; }
    bool is_zero() const { return t_.empty(); }
    std::size_t term_count() const { return t_.size(); }
    const std::vector<Term>& terms() const { return t_; }

    int total_degree() const;                         // -1 for the zero polynomial
    std::optional<int> homogeneous_degree() const;    // nullopt when inhomogeneous; 0 for zero
    bool is_constant() const;

    const Term& leading_term(MonoOrder order) const;  // throws on zero polynomial
    MultiPoly monic(MonoOrder order) const;

    MultiPoly operator+(const MultiPoly& o) const;
    MultiPoly operator-(const MultiPoly& o) const;
    MultiPoly operator*(const MultiPoly& o) const;
    MultiPoly operator-() const;
    MultiPoly scaled(const Rational& c) const;

    template <class F>
    F evaluate(const std::vector<F>& point) const {
        if (static_cast<int>(point.size()) != n_)
            throw std::invalid_argument("MultiPoly::evaluate: wrong point dimension");
        F acc(0);
        for (const auto& [e, c] : t_) {
            F term(c);
            for (int v = 0; v < n_; ++v)
                for (int p = 0; p < e[v]; ++p) term = term * point[v];
            acc += term;
        }
        return acc;
    }

    std::string str(const std::vector<std::string>& names = {}) const;

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return a.n_ == b.n_ && a.t_ == b.t_;
    }
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

private:
    void normalize();

    int n_;
    std::vector<Term> t_;
};

}  // namespace carnot
