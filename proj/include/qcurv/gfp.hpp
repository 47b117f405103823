// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <ostream>
#include <string>

#include "errors.hpp"

namespace qcurv {

/// Residue modulo an odd-careless runtime prime p < 2^32, the F_p leg of the
/// base field. Elements created by generic code (zero(), one(), from_int)
/// carry no modulus yet; they adopt the modulus of the first real element
/// they meet. Combining two elements with different nonzero moduli is a
/// hard error.
class GFp {
public:
    GFp() : raw_(0), p_(0) {}
    GFp(long n) : raw_(n), p_(0) {}  // NOLINT(google-explicit-constructor)
    GFp(long n, unsigned long p) : raw_(0), p_(p) { raw_ = static_cast<long>(norm(n, p)); }

    static GFp from_int(long n) { return GFp(n); }
    static GFp from_integer_string(const std::string& s) {
        // keeps only a value mod an (unknown yet) modulus: fold digits with
        // 64-bit headroom; exact once a modulus is adopted <= 2^32
        long acc = 0;
        bool neg = false;
        std::size_t i = 0;
        if (!s.empty() && (s[0] == '-' || s[0] == '+')) { neg = s[0] == '-'; i = 1; }
        for (; i < s.size(); ++i) {
            acc = acc * 10 + (s[i] - '0');
            if (acc > (1L << 56)) throw Error("integer literal too large for a placeholder residue; set --char first");
        }
        return GFp(neg ? -acc : acc);
    }
    static GFp zero() { return GFp(); }
    static GFp one() { return GFp(1); }

    unsigned long modulus() const { return p_; }
    unsigned long characteristic() const { return p_; }
    bool placeholder() const { return p_ == 0; }

    bool is_zero() const { return p_ ? raw_ == 0 : raw_ == 0; }
    bool is_one() const { return p_ ? raw_ == 1 : raw_ == 1; }

    GFp operator-() const { return p_ ? GFp(static_cast<long>(p_) - raw_, p_) : GFp(-raw_); }

    friend GFp operator+(const GFp& a, const GFp& b) {
        auto [x, y, p] = align(a, b);
        if (!p) return GFp(x + y);
        return GFp(static_cast<long>((static_cast<unsigned long>(x) + static_cast<unsigned long>(y)) % p), p);
    }
    friend GFp operator-(const GFp& a, const GFp& b) { return a + (-b); }
    friend GFp operator*(const GFp& a, const GFp& b) {
        auto [x, y, p] = align(a, b);
        if (!p) {
            __int128 w = static_cast<__int128>(x) * y;
            if (w > (static_cast<__int128>(1) << 62) || w < -(static_cast<__int128>(1) << 62))
                throw Error("placeholder residue overflow; characteristic context missing");
            return GFp(static_cast<long>(w));
        }
        unsigned __int128 w = static_cast<unsigned __int128>(static_cast<unsigned long>(x)) * static_cast<unsigned long>(y);
        return GFp(static_cast<long>(static_cast<unsigned long>(w % p)), p);
    }
    friend GFp operator/(const GFp& a, const GFp& b) { return a * b.inverse(); }

    GFp& operator+=(const GFp& o) { return *this = *this + o; }
    GFp& operator-=(const GFp& o) { return *this = *this - o; }
    GFp& operator*=(const GFp& o) { return *this = *this * o; }
    GFp& operator/=(const GFp& o) { return *this = *this / o; }

    GFp inverse() const {
        if (p_ == 0) {
            if (raw_ == 1 || raw_ == -1) return *this;
            throw Error("cannot invert a placeholder residue without a characteristic context");
        }
        if (raw_ == 0) throw DivisionByZero();
        long t = 0, nt = 1;
        long r = static_cast<long>(p_), nr = raw_;
        while (nr != 0) {
            long q = r / nr;
            long tmp = t - q * nt; t = nt; nt = tmp;
            tmp = r - q * nr; r = nr; nr = tmp;
        }
        if (r != 1) throw DivisionByZero("residue not invertible (modulus not prime?)");
        return GFp(t, p_);
    }

    friend bool operator==(const GFp& a, const GFp& b) {
        auto [x, y, p] = align(a, b);
        return x == y;
    }
    friend bool operator!=(const GFp& a, const GFp& b) { return !(a == b); }

    std::string str() const { return std::to_string(p_ ? raw_ : raw_); }
    friend std::ostream& operator<<(std::ostream& os, const GFp& a) { return os << a.str(); }

private:
    long raw_;
    unsigned long p_;

    static unsigned long norm(long n, unsigned long p) {
        long m = n % static_cast<long>(p);
        if (m < 0) m += static_cast<long>(p);
        return static_cast<unsigned long>(m);
    }

    struct Aligned { long x, y; unsigned long p; };
    static Aligned align(const GFp& a, const GFp& b) {
        if (a.p_ && b.p_) {
            if (a.p_ != b.p_) throw MixedCharacteristic();
            return {a.raw_, b.raw_, a.p_};
        }
        if (a.p_) return {a.raw_, static_cast<long>(norm(b.raw_, a.p_)), a.p_};
        if (b.p_) return {static_cast<long>(norm(a.raw_, b.p_)), b.raw_, b.p_};
        return {a.raw_, b.raw_, 0};
    }
};

}  // namespace qcurv
