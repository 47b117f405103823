// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <ostream>
#include <sstream>
#include <string>
#include <utility>

#include "errors.hpp"
#include "upoly.hpp"
#include "zgcd.hpp"

namespace qcurv {

/// Rational function num/den over a coefficient field K, kept in the unique
/// canonical form: den nonzero and monic, gcd(num, den) = 1, zero is 0/1.
/// Equality of values is therefore bitwise equality of representations.
template <class K, char Var>
class RatFn {
public:
    using Poly = UPoly<K, Var>;

    RatFn() : num_(), den_(Poly::one()) {}
    explicit RatFn(const K& c) : num_(Poly(c)), den_(Poly::one()) {}
    explicit RatFn(Poly p) : num_(std::move(p)), den_(Poly::one()) {}
    RatFn(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) { canonicalize(); }

    static RatFn zero() { return RatFn(); }
    static RatFn one() { return RatFn(Poly::one()); }
    static RatFn gen() { return RatFn(Poly::gen()); }
    static RatFn from_int(long n) { return RatFn(K::from_int(n)); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_polynomial() const { return den_.is_one(); }
    /// c * Var^m with c != 0.
    bool is_monomial() const { return !is_zero() && den_.is_one() && num_.is_monomial(); }

    RatFn operator-() const {
        RatFn r = *this;
        r.num_ = -r.num_;
        return r;
    }

    // Arithmetic exploits the coprime canonical form: cross gcds on the
    // small parts replace one large gcd on the products.
    friend RatFn operator+(const RatFn& a, const RatFn& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        Poly g = gcd_monic(a.den_, b.den_);
        if (g.degree() <= 0) {
            RatFn r;
            r.num_ = a.num_ * b.den_ + b.num_ * a.den_;
            r.den_ = a.den_ * b.den_;
            r.normalize_monic();
            return r;
        }
        Poly da = Poly::div_exact(a.den_, g);
        Poly db = Poly::div_exact(b.den_, g);
        Poly t = a.num_ * db + b.num_ * da;
        if (t.is_zero()) return zero();
        Poly h = gcd_monic(t, g);
        RatFn r;
        if (h.degree() > 0) {
            r.num_ = Poly::div_exact(t, h);
            r.den_ = da * Poly::div_exact(b.den_, h);
        } else {
            r.num_ = std::move(t);
            r.den_ = da * b.den_;
        }
        r.normalize_monic();
        return r;
    }
    friend RatFn operator-(const RatFn& a, const RatFn& b) { return a + (-b); }
    friend RatFn operator*(const RatFn& a, const RatFn& b) {
        if (a.is_zero() || b.is_zero()) return zero();
        Poly ga = gcd_monic(a.num_, b.den_);
        Poly gb = gcd_monic(b.num_, a.den_);
        RatFn r;
        r.num_ = (ga.degree() > 0 ? Poly::div_exact(a.num_, ga) : a.num_) *
                 (gb.degree() > 0 ? Poly::div_exact(b.num_, gb) : b.num_);
        r.den_ = (gb.degree() > 0 ? Poly::div_exact(a.den_, gb) : a.den_) *
                 (ga.degree() > 0 ? Poly::div_exact(b.den_, ga) : b.den_);
        r.normalize_monic();
        return r;
    }
    friend RatFn operator/(const RatFn& a, const RatFn& b) {
        if (b.is_zero()) throw DivisionByZero();
        return a * b.inverse();
    }
    RatFn& operator+=(const RatFn& o) { return *this = *this + o; }
    RatFn& operator-=(const RatFn& o) { return *this = *this - o; }
    RatFn& operator*=(const RatFn& o) { return *this = *this * o; }
    RatFn& operator/=(const RatFn& o) { return *this = *this / o; }

    RatFn inverse() const {
        if (is_zero()) throw DivisionByZero();
        RatFn r;
        r.num_ = den_;
        r.den_ = num_;
        r.normalize_monic();
        return r;
    }

    RatFn pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        RatFn r = one(), b = *this;
        unsigned long u = static_cast<unsigned long>(e);
        while (u) {
            if (u & 1) r *= b;
            b = b * b;
            u >>= 1;
        }
        return r;
    }

    /// Substitutes Var <- c*Var. Coprimality is preserved; only the monic
    /// normalization of the denominator has to be redone.
    RatFn scale_var(const K& c) const {
        RatFn r;
        r.num_ = num_.scale_var(c);
        r.den_ = den_.scale_var(c);
        if (!r.den_.is_zero() && !r.den_.lead().is_one()) {
            K il = r.den_.lead().inverse();
            r.num_ = r.num_.scaled(il);
            r.den_ = r.den_.scaled(il);
        }
        return r;
    }

    /// Evaluation at a K point; throws DivisionByZero if the point is a pole.
    K eval_k(const K& at) const {
        K d = den_.eval_k(at);
        if (d.is_zero()) throw DivisionByZero("evaluation at a pole");
        return num_.eval_k(at) / d;
    }

    friend bool operator==(const RatFn& a, const RatFn& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatFn& a, const RatFn& b) { return !(a == b); }

    std::string str() const {
        std::ostringstream os;
        os << *this;
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const RatFn& f) {
        if (f.den_.is_one()) {
            f.num_.print(os, true);
            return os;
        }
        os << "(";
        f.num_.print(os, true);
        os << ")/(";
        f.den_.print(os, true);
        os << ")";
        return os;
    }

private:
    Poly num_, den_;

    void normalize_monic() {
        if (num_.is_zero()) {
            den_ = Poly::one();
            return;
        }
        if (!den_.lead().is_one()) {
            K il = den_.lead().inverse();
            num_ = num_.scaled(il);
            den_ = den_.scaled(il);
        }
    }

    void canonicalize() {
        if (den_.is_zero()) throw DivisionByZero("zero denominator");
        if (num_.is_zero()) {
            den_ = Poly::one();
            return;
        }
        Poly g = gcd_monic(num_, den_);
        if (g.degree() > 0) {
            num_ = Poly::div_exact(num_, g);
            den_ = Poly::div_exact(den_, g);
        }
        normalize_monic();
    }
};

}  // namespace qcurv
