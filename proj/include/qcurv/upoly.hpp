// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace qcurv {

/// Dense univariate polynomial over a commutative coefficient ring K.
/// The variable name is part of the type, so polynomials in q and in x
/// cannot be mixed accidentally. Zero is the empty coefficient list; the
/// leading coefficient of a nonzero polynomial is never zero.
///
/// Ring operations need only ring operations on K; divmod/gcd require K
/// to be a field (division by nonzero leading coefficients).
template <class K, char Var>
class UPoly {
public:
    UPoly() = default;
    explicit UPoly(const K& c) { c_.push_back(c); trim(); }
    explicit UPoly(std::vector<K> coeffs) : c_(std::move(coeffs)) { trim(); }

    static UPoly zero() { return UPoly(); }
    static UPoly one() { return UPoly(K::one()); }
    static UPoly gen() { return monomial(K::one(), 1); }
    static UPoly monomial(const K& c, long deg) {
        UPoly r;
        if (deg < 0) throw IndexOutOfRange();
        if (c.is_zero()) return r;
        r.c_.assign(static_cast<std::size_t>(deg) + 1, K::zero());
        r.c_.back() = c;
        return r;
    }

    long degree() const { return static_cast<long>(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0].is_one(); }
    bool is_monomial() const {
        if (is_zero()) return false;
        for (std::size_t i = 0; i + 1 < c_.size(); ++i)
            if (!c_[i].is_zero()) return false;
        return true;
    }

    K coeff(long i) const {
        if (i < 0 || i >= static_cast<long>(c_.size())) return K::zero();
        return c_[static_cast<std::size_t>(i)];
    }
    const K& lead() const {
        if (is_zero()) throw Error("lead() of the zero polynomial");
        return c_.back();
    }
    const std::vector<K>& coeffs() const { return c_; }

    UPoly operator-() const {
        UPoly r = *this;
        for (auto& c : r.c_) c = -c;
        return r;
    }

    friend UPoly operator+(const UPoly& a, const UPoly& b) {
        UPoly r;
        r.c_.resize(std::max(a.c_.size(), b.c_.size()), K::zero());
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = a.coeff(static_cast<long>(i)) + b.coeff(static_cast<long>(i));
        r.trim();
        return r;
    }
    friend UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }
    friend UPoly operator*(const UPoly& a, const UPoly& b) {
        UPoly r;
        if (a.is_zero() || b.is_zero()) return r;
        r.c_.assign(a.c_.size() + b.c_.size() - 1, K::zero());
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                r.c_[i + j] += a.c_[i] * b.c_[j];
        }
        r.trim();
        return r;
    }
    UPoly& operator+=(const UPoly& o) { return *this = *this + o; }
    UPoly& operator-=(const UPoly& o) { return *this = *this - o; }
    UPoly& operator*=(const UPoly& o) { return *this = *this * o; }

    UPoly scaled(const K& c) const {
        if (c.is_zero()) return UPoly();
        UPoly r = *this;
        for (auto& x : r.c_) x = x * c;
        r.trim();
        return r;
    }

    UPoly pow(unsigned long e) const {
        UPoly r = one(), b = *this;
        while (e) {
            if (e & 1) r *= b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    /// Substitutes Var <- c*Var (multiplies coefficient i by c^i).
    UPoly scale_var(const K& c) const {
        UPoly r = *this;
        K p = K::one();
        for (std::size_t i = 0; i < r.c_.size(); ++i) {
            if (i) p = p * c;
            r.c_[i] = r.c_[i] * p;
        }
        r.trim();
        return r;
    }

    /// Multiplies by Var^k (k >= 0).
    UPoly shift_up(long k) const {
        if (is_zero() || k == 0) return *this;
        UPoly r;
        r.c_.assign(c_.size() + static_cast<std::size_t>(k), K::zero());
        for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i + static_cast<std::size_t>(k)] = c_[i];
        return r;
    }

    /// Number of trailing zero coefficients (ord at Var=0); -1 for zero poly.
    long trailing_order() const {
        if (is_zero()) return -1;
        long i = 0;
        while (c_[static_cast<std::size_t>(i)].is_zero()) ++i;
        return i;
    }

    /// d/dVar.
    UPoly derivative() const {
        UPoly r;
        if (degree() < 1) return r;
        r.c_.resize(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) r.c_[i - 1] = c_[i] * K::from_int(static_cast<long>(i));
        r.trim();
        return r;
    }

    /// Horner evaluation at a K point.
    K eval_k(const K& at) const {
        K acc = K::zero();
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * at + c_[i];
        return acc;
    }

    friend bool operator==(const UPoly& a, const UPoly& b) {
        if (a.c_.size() != b.c_.size()) return false;
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            if (!(a.c_[i] == b.c_[i])) return false;
        return true;
    }
    friend bool operator!=(const UPoly& a, const UPoly& b) { return !(a == b); }

    // ---- field-coefficient operations ----

    /// Euclidean division; requires K a field (or lead(b) invertible).
    static std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
        if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
        UPoly q, r = a;
        const K inv_lead = b.lead().inverse();
        if (r.degree() >= b.degree()) q.c_.assign(static_cast<std::size_t>(r.degree() - b.degree()) + 1, K::zero());
        while (!r.is_zero() && r.degree() >= b.degree()) {
            long d = r.degree() - b.degree();
            K f = r.lead() * inv_lead;
            q.c_[static_cast<std::size_t>(d)] = f;
            // r -= f*Var^d * b, done in place
            for (long i = 0; i <= b.degree(); ++i) {
                std::size_t idx = static_cast<std::size_t>(i + d);
                r.c_[idx] = r.c_[idx] - f * b.coeff(i);
            }
            r.trim();
        }
        q.trim();
        return {q, r};
    }

    friend UPoly operator%(const UPoly& a, const UPoly& b) { return divmod(a, b).second; }

    /// Exact division, valid over coefficient rings as well: at each step the
    /// leading coefficients must divide exactly (they do whenever b | a).
    static UPoly div_exact(const UPoly& a, const UPoly& b) {
        if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
        UPoly q, r = a;
        if (r.degree() >= b.degree())
            q.c_.assign(static_cast<std::size_t>(r.degree() - b.degree()) + 1, K::zero());
        while (!r.is_zero() && r.degree() >= b.degree()) {
            long d = r.degree() - b.degree();
            K f = exact_div_coeff(r.lead(), b.lead());
            q.c_[static_cast<std::size_t>(d)] = f;
            for (long i = 0; i <= b.degree(); ++i) {
                std::size_t idx = static_cast<std::size_t>(i + d);
                r.c_[idx] = r.c_[idx] - f * b.coeff(i);
            }
            r.trim();
        }
        if (!r.is_zero()) throw Error("polynomial division was not exact");
        q.trim();
        return q;
    }

    UPoly monic() const {
        if (is_zero()) return *this;
        return scaled(lead().inverse());
    }

    std::string str(bool parens_coeff = false) const {
        std::ostringstream os;
        print(os, parens_coeff);
        return os.str();
    }

    /// Canonical rendering, descending degree. The result re-parses to the
    /// same polynomial; coefficients that are not plain integers are wrapped
    /// in parentheses when parens_coeff is set.
    void print(std::ostream& os, bool parens_coeff = false) const {
        if (is_zero()) {
            os << "0";
            return;
        }
        bool first = true;
        for (long i = degree(); i >= 0; --i) {
            K c = coeff(i);
            if (c.is_zero()) continue;
            std::string cs = coeff_str(c);
            // strip the sign only off simple negatives; a compound coefficient
            // like -2*q^2 + 1 keeps its sign and gets parenthesized instead
            bool neg = !cs.empty() && cs[0] == '-' &&
                       cs.find_first_of("+-", 1) == std::string::npos;
            if (first) {
                if (neg) { os << "-"; cs = cs.substr(1); }
            } else {
                os << (neg ? " - " : " + ");
                if (neg) cs = cs.substr(1);
            }
            first = false;
            bool is_unit = (cs == "1");
            bool simple = cs.find_first_of("+-*/^ ()") == std::string::npos;
            if (i == 0) {
                if (!simple && parens_coeff) os << "(" << cs << ")";
                else os << cs;
            } else {
                if (!is_unit) {
                    if (!simple && parens_coeff) os << "(" << cs << ")";
                    else os << cs;
                    os << "*";
                }
                os << Var;
                if (i > 1) os << "^" << i;
            }
        }
    }

private:
    std::vector<K> c_;

    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    template <class C>
    static std::string coeff_str(const C& c) {
        std::ostringstream os;
        os << c;
        return os.str();
    }
};

/// Exact coefficient division: field division generically, recursive exact
/// polynomial division for nested polynomial coefficients.
template <class K>
K exact_div_coeff(const K& a, const K& b) {
    return a / b;
}
template <class K, char Var>
UPoly<K, Var> exact_div_coeff(const UPoly<K, Var>& a, const UPoly<K, Var>& b) {
    return UPoly<K, Var>::div_exact(a, b);
}

/// Monic gcd via the Euclidean algorithm over a coefficient field.
template <class K, char Var>
UPoly<K, Var> gcd_monic(UPoly<K, Var> a, UPoly<K, Var> b) {
    while (!b.is_zero()) {
        auto r = UPoly<K, Var>::divmod(a, b).second;
        a = b;
        b = r;
    }
    if (a.is_zero()) return a;
    return a.monic();
}

/// Extended gcd: returns g (monic) and u with u*a == g (mod m).
/// Used for inversion in K[Var]/(m).
template <class K, char Var>
std::pair<UPoly<K, Var>, UPoly<K, Var>> half_ext_gcd(UPoly<K, Var> a, const UPoly<K, Var>& m) {
    using P = UPoly<K, Var>;
    P r0 = m, r1 = a % m;
    P u0 = P::zero(), u1 = P::one();
    while (!r1.is_zero()) {
        auto [q, r2] = P::divmod(r0, r1);
        P u2 = u0 - q * u1;
        r0 = r1; r1 = r2;
        u0 = u1; u1 = u2;
    }
    if (r0.is_zero()) return {r0, u0};
    K il = r0.lead().inverse();
    return {r0.scaled(il), (u0 % m).scaled(il)};
}

}  // namespace qcurv
