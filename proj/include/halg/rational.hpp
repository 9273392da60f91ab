#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace halg {

// Exact rational scalar, always stored reduced with positive denominator.
// Backed by GMP so numerators/denominators are arbitrary-precision.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}
    Rational(int n) : v_(static_cast<long>(n)) {}

    Rational(long num, long den) {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        v_ = mpq_class(num, den);
        v_.canonicalize();
    }

    // Accepts "p", "-p", "p/q" with optional sign on either part.
    explicit Rational(const std::string& text) {
        try {
            v_ = mpq_class(text, 10);
        } catch (const std::invalid_argument&) {
            throw std::invalid_argument("Rational: cannot parse '" + text + "'");
        }
        if (v_.get_den() == 0) throw std::domain_error("Rational: zero denominator in '" + text + "'");
        v_.canonicalize();
    }

    static Rational from_mpq(const mpq_class& q) {
        Rational r;
        r.v_ = q;
        r.v_.canonicalize();
        return r;
    }

    const mpq_class& raw() const { return v_; }
    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }

    bool is_zero() const { return sgn(v_) == 0; }
    int sign() const { return sgn(v_); }

    Rational operator-() const { return from_mpq(mpq_class(-v_)); }

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

    friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) == 0; }
    friend bool operator!=(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) != 0; }
    friend bool operator<(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) < 0; }
    friend bool operator<=(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) <= 0; }
    friend bool operator>(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) > 0; }
    friend bool operator>=(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) >= 0; }

    Rational inv() const {
        if (is_zero()) throw std::domain_error("Rational: inverse of zero");
        return from_mpq(mpq_class(1) / v_);
    }

    // Canonical text form: "p" for integers, "p/q" otherwise.
    std::string str() const {
        if (v_.get_den() == 1) return v_.get_num().get_str();
        return v_.get_str();
    }

private:
    mpq_class v_;
};

inline Rational operator*(long a, const Rational& b) { return Rational(a) * b; }

// Exact factorial, used by symmetry factors and series normalizations.
inline Rational factorial(int n) {
    if (n < 0) throw std::invalid_argument("factorial: negative argument");
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return Rational::from_mpq(mpq_class(f));
}

inline Rational binomial(int n, int k) {
    if (k < 0 || k > n) return Rational(0);
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational::from_mpq(mpq_class(b));
}

}  // namespace halg
