// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <string>

#include "errors.hpp"

namespace qcurv {

/// Arbitrary-precision rational, always in canonical form
/// (reduced fraction, positive denominator; zero is 0/1).
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(static_cast<signed long>(n)) {}  // NOLINT(google-explicit-constructor)
    explicit Rational(const mpq_class& v) : v_(v) { v_.canonicalize(); }
    Rational(long num, long den) : v_(num, den) {
        if (den == 0) throw DivisionByZero();
        v_.canonicalize();
    }

    static Rational from_int(long n) { return Rational(n); }
    /// Parses a decimal integer literal of arbitrary length.
    static Rational from_integer_string(const std::string& s) {
        return Rational(mpq_class(mpz_class(s, 10)));
    }
    static Rational zero() { return Rational(0); }
    static Rational one() { return Rational(1); }
    static constexpr unsigned long characteristic() { return 0; }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw DivisionByZero();
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    Rational inverse() const {
        if (is_zero()) throw DivisionByZero();
        return Rational(mpq_class(1) / v_);
    }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }

    const mpq_class& value() const { return v_; }
    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }

    /// Exact square root; returns false when none exists in Q.
    bool try_sqrt(Rational& out) const {
        if (sgn(v_) < 0) return false;
        mpz_class n = v_.get_num(), d = v_.get_den(), rn, rd;
        if (mpz_perfect_square_p(n.get_mpz_t()) == 0) return false;
        if (mpz_perfect_square_p(d.get_mpz_t()) == 0) return false;
        mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
        mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
        out = Rational(mpq_class(rn, rd));
        return true;
    }

    std::string str() const { return v_.get_str(); }
    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.v_.get_str(); }

private:
    mpq_class v_;
};

}  // namespace qcurv
