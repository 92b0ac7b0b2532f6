#include "carnot/symtensor.hpp"

#include <algorithm>

namespace carnot {

std::vector<std::vector<int>> weakly_increasing_tuples(int n, int k) {
    std::vector<std::vector<int>> out;
    if (k == 0) {
        out.push_back({});
        return out;
    }
    if (n == 0) return out;
    std::vector<int> t(k, 0);
    while (true) {
        out.push_back(t);
        int i = k - 1;
        while (i >= 0 && t[i] == n - 1) --i;
        if (i < 0) break;
        int v = t[i] + 1;
        for (int j = i; j < k; ++j) t[j] = v;
    }
    return out;
}

long long count_weakly_increasing(int n, int k) {
    // binomial(n + k - 1, k)
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n + k - i) / i;
    return r;
}

Rational arrangement_count(const std::vector<int>& sorted_tuple) {
    long fact = 1;
    for (std::size_t i = 2; i <= sorted_tuple.size(); ++i) fact *= static_cast<long>(i);
    long denom = 1;
    std::size_t i = 0;
    while (i < sorted_tuple.size()) {
        std::size_t j = i;
        long run = 1;
        while (j + 1 < sorted_tuple.size() && sorted_tuple[j + 1] == sorted_tuple[i]) {
            ++j;
            ++run;
            denom *= run;
        }
        i = j + 1;
    }
    return Rational(fact, denom);
}

SymTensor::SymTensor(int n, int degree) : n_(n), k_(degree) {
    tuples_ = weakly_increasing_tuples(n, degree);
    for (std::size_t r = 0; r < tuples_.size(); ++r) rank_[tuples_[r]] = r;
    c_.assign(tuples_.size(), Rational(0));
}

SymTensor SymTensor::basis_monomial(int n, const std::vector<int>& indices) {
    SymTensor t(n, static_cast<int>(indices.size()));
    std::vector<int> s = indices;
    std::sort(s.begin(), s.end());
    // Sym(e_{j1} x ... x e_{jk}) spreads mass evenly over the arrangements.
    t.c_[t.rank_of(s)] = arrangement_count(s).inverse();
    return t;
}

std::size_t SymTensor::rank_of(const std::vector<int>& sorted_tuple) const {
    auto it = rank_.find(sorted_tuple);
    if (it == rank_.end()) throw std::invalid_argument("SymTensor: bad index tuple");
    return it->second;
}

const Rational& SymTensor::coefficient(std::vector<int> tuple) const {
    std::sort(tuple.begin(), tuple.end());
    return c_[rank_of(tuple)];
}

void SymTensor::set_coefficient(std::vector<int> tuple, const Rational& v) {
    std::sort(tuple.begin(), tuple.end());
    c_[rank_of(tuple)] = v;
}

bool SymTensor::is_zero() const {
    for (const Rational& x : c_)
        if (!x.is_zero()) return false;
    return true;
}

Rational SymTensor::evaluate(const std::vector<std::vector<Rational>>& args) const {
    if (static_cast<int>(args.size()) != k_)
        throw std::invalid_argument("SymTensor::evaluate: wrong arity");
    for (const auto& a : args)
        if (static_cast<int>(a.size()) != n_)
            throw std::invalid_argument("SymTensor::evaluate: wrong vector dimension");
    // Sum over all index tuples of coeff * prod_i arg_i[j_i].
    Rational acc(0);
    std::vector<int> idx(k_, 0);
    if (k_ == 0) return c_.empty() ? acc : c_[0];
    while (true) {
        std::vector<int> s = idx;
        std::sort(s.begin(), s.end());
        const Rational& coeff = c_[rank_of(s)];
        if (!coeff.is_zero()) {
            Rational prod = coeff;
            for (int i = 0; i < k_; ++i) prod *= args[i][idx[i]];
            acc += prod;
        }
        int i = k_ - 1;
        while (i >= 0 && idx[i] == n_ - 1) {
            idx[i] = 0;
            --i;
        }
        if (i < 0) break;
        ++idx[i];
    }
    return acc;
}

SymTensor SymTensor::operator+(const SymTensor& o) const {
    if (n_ != o.n_ || k_ != o.k_) throw std::invalid_argument("SymTensor: shape mismatch");
    SymTensor r = *this;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
    return r;
}

SymTensor SymTensor::operator-(const SymTensor& o) const {
    if (n_ != o.n_ || k_ != o.k_) throw std::invalid_argument("SymTensor: shape mismatch");
    SymTensor r = *this;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
    return r;
}

SymTensor SymTensor::scaled(const Rational& s) const {
    SymTensor r = *this;
    for (Rational& x : r.c_) x *= s;
    return r;
}

SymTensor symmetrize(const DenseTensor& t) {
    SymTensor out(t.n, t.degree);
    for (std::size_t r = 0; r < out.coefficient_count(); ++r) {
        std::vector<int> p = out.tuple_of(r);
        Rational arrangements = arrangement_count(p);
        // Averaging over all k! position permutations reduces to averaging the
        // input over the distinct arrangements of the representative tuple.
        Rational sum(0);
        do {
            auto it = t.entries.find(p);
            if (it != t.entries.end()) sum += it->second;
        } while (std::next_permutation(p.begin(), p.end()));
        out.at_rank(r) = sum / arrangements;
    }
    return out;
}

Rational pairing(const SymTensor& p, const SymTensor& k) {
    if (p.degree() != k.degree() || p.n() != k.n())
        throw std::invalid_argument("pairing: degree mismatch");
    Rational acc(0);
    for (std::size_t r = 0; r < p.coefficient_count(); ++r) {
        const Rational& a = p.at_rank(r);
        const Rational& b = k.at_rank(r);
        if (a.is_zero() || b.is_zero()) continue;
        acc += arrangement_count(p.tuple_of(r)) * a * b;
    }
    return acc;
}

SymTensor polarize(const MultiPoly& homogeneous) {
    auto deg = homogeneous.homogeneous_degree();
    if (!deg) throw std::invalid_argument("polarize: input is not homogeneous");
    SymTensor out(homogeneous.nvars(), *deg);
    for (const auto& [e, c] : homogeneous.terms()) {
        std::vector<int> tuple;
        for (int v = 0; v < homogeneous.nvars(); ++v)
            for (int rep = 0; rep < e[v]; ++rep) tuple.push_back(v);
        // Spread the monomial coefficient evenly over the arrangements so the
        // diagonal restriction reproduces the polynomial.
        out.set_coefficient(tuple, c / arrangement_count(tuple));
    }
    return out;
}

}  // namespace carnot
