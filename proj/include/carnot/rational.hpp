#pragma once

#include <gmpxx.h>

#include <ostream>
#include <stdexcept>
#include <string>

namespace carnot {

// Exact rational scalar. Canonical form is maintained at all times:
// gcd(|numerator|, denominator) = 1 and denominator > 0.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(int n) : v_(n) {}
    Rational(long n) : v_(static_cast<signed long>(n)) {}
    Rational(long num, long den) {
        if (den == 0) throw std::invalid_argument("Rational: zero denominator");
        v_ = mpq_class(num, den);
        v_.canonicalize();
    }
    explicit Rational(mpq_class v) : v_(std::move(v)) {
        if (v_.get_den() == 0) throw std::invalid_argument("Rational: zero denominator");
        v_.canonicalize();
    }

    // Accepts "p", "-p", "p/q" with optional sign on p; q must be positive.
    static Rational parse(const std::string& text);

    const mpz_class& numerator() const { return v_.get_num(); }
    const mpz_class& denominator() const { return v_.get_den(); }
    const mpq_class& raw() const { return v_; }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    int sign() const { return sgn(v_); }

    Rational abs() const { return Rational(mpq_class(::abs(v_))); }
    Rational inverse() const {
        if (is_zero()) throw std::domain_error("Rational: division by zero");
        return Rational(mpq_class(1) / v_);
    }

    std::string str() const {
        return v_.get_den() == 1 ? v_.get_num().get_str() : v_.get_str();
    }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    mpq_class v_;
};

inline Rational Rational::parse(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            mpq_class v(text);
            v.canonicalize();
            return Rational(std::move(v));
        }
        mpz_class num(text.substr(0, slash));
        mpz_class den(text.substr(slash + 1));
        if (den <= 0) throw std::invalid_argument("Rational::parse: denominator must be positive");
        mpq_class v(num, den);
        v.canonicalize();
        return Rational(std::move(v));
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("Rational::parse: bad literal '" + text + "'");
    }
}

// Gaussian rational a + b*i. Field operations are exact; conjugation is an involution.
struct GaussianRational {
    Rational re;
    Rational im;

    GaussianRational() = default;
    GaussianRational(int n) : re(n) {}
    GaussianRational(long n) : re(n) {}
    GaussianRational(Rational r) : re(std::move(r)) {}
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    static GaussianRational i() { return GaussianRational(Rational(0), Rational(1)); }

    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    bool is_real() const { return im.is_zero(); }
    GaussianRational conj() const { return {re, -im}; }
    Rational norm() const { return re * re + im * im; }

    GaussianRational inverse() const {
        Rational n = norm();
        if (n.is_zero()) throw std::domain_error("GaussianRational: division by zero");
        return {re / n, -im / n};
    }

    std::string str() const {
        if (im.is_zero()) return re.str();
        std::string i_part = (im.is_one() ? "i" : (im == Rational(-1) ? "-i" : im.str() + "i"));
        if (re.is_zero()) return i_part;
        return re.str() + (im.sign() > 0 ? "+" : "") + i_part;
    }

    GaussianRational& operator+=(const GaussianRational& o) { re += o.re; im += o.im; return *this; }
    GaussianRational& operator-=(const GaussianRational& o) { re -= o.re; im -= o.im; return *this; }
    GaussianRational& operator*=(const GaussianRational& o) {
        Rational r = re * o.re - im * o.im;
        Rational i = re * o.im + im * o.re;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }
    GaussianRational& operator/=(const GaussianRational& o) { return *this *= o.inverse(); }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

    friend std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << z.str(); }
};

template <class F>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
    static constexpr bool is_complex = false;
    static Rational conj(const Rational& x) { return x; }
    static bool is_zero(const Rational& x) { return x.is_zero(); }
};

template <>
struct ScalarTraits<GaussianRational> {
    static constexpr bool is_complex = true;
    static GaussianRational conj(const GaussianRational& x) { return x.conj(); }
    static bool is_zero(const GaussianRational& x) { return x.is_zero(); }
};

}  // namespace carnot
