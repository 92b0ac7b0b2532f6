#include "carnot/multipoly.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace carnot {

int mono_deg(const Expv& e) {
    int d = 0;
    for (int x : e) d += x;
    return d;
}

int mono_cmp(MonoOrder order, const Expv& a, const Expv& b) {
    if (a.size() != b.size()) throw std::invalid_argument("mono_cmp: arity mismatch");
    if (order == MonoOrder::Lex) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
        }
        return 0;
    }
    // Graded reverse lexicographic: compare total degree, then the *last*
    // differing exponent with reversed sign.
    int da = mono_deg(a), db = mono_deg(b);
    if (da != db) return da > db ? 1 : -1;
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
    }
    return 0;
}

bool mono_divides(const Expv& a, const Expv& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Expv mono_mul(const Expv& a, const Expv& b) {
    Expv r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Expv mono_div(const Expv& a, const Expv& b) {
    Expv r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        r[i] = a[i] - b[i];
        if (r[i] < 0) throw std::invalid_argument("mono_div: not divisible");
    }
    return r;
}

Expv mono_lcm(const Expv& a, const Expv& b) {
    Expv r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
    return r;
}

bool mono_coprime(const Expv& a, const Expv& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > 0 && b[i] > 0) return false;
    return true;
}

MultiPoly MultiPoly::constant(int nvars, const Rational& c) {
    MultiPoly p(nvars);
    if (!c.is_zero()) p.t_.emplace_back(Expv(nvars, 0), c);
    return p;
}

MultiPoly MultiPoly::variable(int nvars, int i) {
    if (i < 0 || i >= nvars) throw std::invalid_argument("MultiPoly::variable: index out of range");
    Expv e(nvars, 0);
    e[i] = 1;
    return monomial(nvars, std::move(e), Rational(1));
}

MultiPoly MultiPoly::monomial(int nvars, Expv e, const Rational& c) {
    if (static_cast<int>(e.size()) != nvars)
        throw std::invalid_argument("MultiPoly::monomial: bad exponent vector");
    MultiPoly p(nvars);
    if (!c.is_zero()) p.t_.emplace_back(std::move(e), c);
    return p;
}

MultiPoly MultiPoly::from_terms(int nvars, std::vector<Term> terms) {
    MultiPoly p(nvars);
    p.t_ = std::move(terms);
    p.normalize();
    return p;
}

void MultiPoly::normalize() {
    std::map<Expv, Rational> acc;
    for (auto& [e, c] : t_) {
        if (static_cast<int>(e.size()) != n_)
            throw std::invalid_argument("MultiPoly: bad exponent vector");
        acc[e] += c;
    }
    t_.clear();
    for (auto& [e, c] : acc)
        if (!c.is_zero()) t_.emplace_back(e, c);
    std::sort(t_.begin(), t_.end(), [](const Term& a, const Term& b) {
        return mono_cmp(MonoOrder::Grevlex, a.first, b.first) > 0;
    });
}

int MultiPoly::total_degree() const {
    int d = -1;
    for (const auto& [e, c] : t_) d = std::max(d, mono_deg(e));
    return d;
}

std::optional<int> MultiPoly::homogeneous_degree() const {
    if (t_.empty()) return 0;
    int d = mono_deg(t_.front().first);
    for (const auto& [e, c] : t_)
        if (mono_deg(e) != d) return std::nullopt;
    return d;
}

bool MultiPoly::is_constant() const {
    return t_.empty() || (t_.size() == 1 && mono_deg(t_.front().first) == 0);
}

const MultiPoly::Term& MultiPoly::leading_term(MonoOrder order) const {
    if (t_.empty()) throw std::domain_error("MultiPoly: leading term of zero");
    if (order == MonoOrder::Grevlex) return t_.front();
    const Term* best = &t_.front();
    for (const auto& t : t_)
        if (mono_cmp(order, t.first, best->first) > 0) best = &t;
    return *best;
}

MultiPoly MultiPoly::monic(MonoOrder order) const {
    if (t_.empty()) return *this;
    return scaled(leading_term(order).second.inverse());
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
    if (n_ != o.n_) throw std::invalid_argument("MultiPoly: arity mismatch");
    std::vector<Term> terms = t_;
    terms.insert(terms.end(), o.t_.begin(), o.t_.end());
    return from_terms(n_, std::move(terms));
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const { return *this + (-o); }

MultiPoly MultiPoly::operator-() const {
    MultiPoly p(n_);
    p.t_ = t_;
    for (auto& [e, c] : p.t_) c = -c;
    return p;
}

MultiPoly MultiPoly::scaled(const Rational& c) const {
    if (c.is_zero()) return MultiPoly(n_);
    MultiPoly p(n_);
    p.t_ = t_;
    for (auto& [e, k] : p.t_) k = k * c;
    return p;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
    if (n_ != o.n_) throw std::invalid_argument("MultiPoly: arity mismatch");
    std::vector<Term> terms;
    terms.reserve(t_.size() * o.t_.size());
    for (const auto& [ea, ca] : t_)
        for (const auto& [eb, cb] : o.t_) terms.emplace_back(mono_mul(ea, eb), ca * cb);
    return from_terms(n_, std::move(terms));
}

std::string MultiPoly::str(const std::vector<std::string>& names) const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : t_) {
        Rational a = c.abs();
        if (first) {
            if (c.sign() < 0) os << "-";
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
        }
        first = false;
        bool printed_coeff = false;
        if (!a.is_one() || mono_deg(e) == 0) {
            os << a.str();
            printed_coeff = true;
        }
        bool first_var = true;
        for (std::size_t v = 0; v < e.size(); ++v) {
            if (e[v] == 0) continue;
            if (printed_coeff || !first_var) os << "*";
            first_var = false;
            if (v < names.size())
                os << names[v];
            else
                os << "x" << v;
            if (e[v] > 1) os << "^" << e[v];
        }
    }
    return os.str();
}

}  // namespace carnot
