#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "cforge/errors.hpp"

namespace cforge {

// Exact rational scalar. Always kept in canonical form: lowest terms,
// denominator >= 1, zero is 0/1.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}
    Rational(long num, long den) {
        if (den == 0) throw Error("rational with zero denominator");
        v_ = mpq_class(num, den);
        v_.canonicalize();
    }

    // Accepts "p", "-p" or "p/q" in base 10.
    static Rational parse(std::string_view text) {
        Rational r;
        if (text.empty() || mpq_set_str(r.v_.get_mpq_t(), std::string(text).c_str(), 10) != 0)
            throw Error("malformed rational literal: '" + std::string(text) + "'");
        if (mpz_sgn(mpq_denref(r.v_.get_mpq_t())) == 0)
            throw Error("rational with zero denominator: '" + std::string(text) + "'");
        r.v_.canonicalize();
        return r;
    }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    int sign() const { return sgn(v_); }

    Rational operator-() const { return Rational(-v_); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw Error("rational division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }

    Rational abs() const { return sign() < 0 ? -*this : *this; }

    // "p" when the denominator is 1, else "p/q"; always lowest terms.
    std::string str() const { return v_.get_str(); }

    std::string numerator_str() const { return v_.get_num().get_str(); }
    std::string denominator_str() const { return v_.get_den().get_str(); }

    static Rational factorial(unsigned n) {
        Rational r(1);
        for (unsigned k = 2; k <= n; ++k) r *= Rational(long(k));
        return r;
    }

    static Rational binomial(unsigned n, unsigned k) {
        if (k > n) return Rational(0);
        Rational r(1);
        for (unsigned i = 0; i < k; ++i) {
            r *= Rational(long(n - i));
            r /= Rational(long(i + 1));
        }
        return r;
    }

private:
    explicit Rational(mpq_class v) : v_(std::move(v)) {}
    mpq_class v_;
};

} // namespace cforge
