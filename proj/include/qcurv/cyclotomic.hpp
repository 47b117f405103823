// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <type_traits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "tower.hpp"

namespace qcurv {

namespace detail {
template <class K>
unsigned long char_of(const K&) { return 0; }
inline unsigned long char_of(const GFp& a) { return a.characteristic(); }
}  // namespace detail

/// Characteristic carried by the coefficients of f (0 over Q; for F_p the
/// first modulus found, since placeholders carry none).
template <class K>
unsigned long characteristic_of(const RatFn<K, 'q'>& f) {
    for (const auto& c : f.num().coeffs()) {
        auto p = detail::char_of(c);
        if (p) return p;
    }
    for (const auto& c : f.den().coeffs()) {
        auto p = detail::char_of(c);
        if (p) return p;
    }
    return 0;
}

/// n-th cyclotomic polynomial Phi_n in q over the base field K, computed by
/// exact division: Phi_n = (q^n - 1) / prod_{d|n, d<n} Phi_d.
/// In characteristic p the order must be coprime to p.
template <class K>
QPoly<K> cyclotomic(long n) {
    if (n < 1) throw IndexOutOfRange();
    std::vector<QPoly<K>> memo(static_cast<std::size_t>(n) + 1);
    auto rec = [&](auto&& self, long m) -> const QPoly<K>& {
        auto& slot = memo[static_cast<std::size_t>(m)];
        if (!slot.is_zero()) return slot;
        // q^m - 1
        std::vector<K> c(static_cast<std::size_t>(m) + 1, K::zero());
        c[0] = -K::one();
        c[static_cast<std::size_t>(m)] = K::one();
        QPoly<K> acc{std::vector<K>(c)};
        for (long d = 1; d < m; ++d)
            if (m % d == 0) acc = QPoly<K>::div_exact(acc, self(self, d));
        slot = acc;
        return slot;
    };
    return rec(rec, n);
}

inline void check_order_vs_char(long n, unsigned long p) {
    if (p != 0 && n % static_cast<long>(p) == 0) throw OrderDivisibleByChar(n);
}

template <class K>
QPoly<K> cyclotomic_checked(long n, unsigned long p) {
    check_order_vs_char(n, p);
    return cyclotomic<K>(n);
}

/// Cyclotomic place of order n: the valuation where q reduces to a primitive
/// n-th root of unity. Reduction works modulo the full Phi_n (in char p a
/// product of the irreducible phi_v; identity checks agree by CRT).
template <class K>
struct CycloPlace {
    long order;
    QPoly<K> phi;
    unsigned long characteristic;
    detail::ZPoly zphi;  // integer image of phi, the fast-path modulus over Q

    static std::shared_ptr<const CycloPlace> make(long n, unsigned long p = 0) {
        if (n < 2) throw IndexOutOfRange();
        check_order_vs_char(n, p);
        auto pl = std::make_shared<CycloPlace>();
        pl->order = n;
        pl->phi = cyclotomic<K>(n);
        pl->characteristic = p;
        if constexpr (std::is_same_v<K, Rational>) pl->zphi = detail::to_zpoly(pl->phi);
        return pl;
    }
};

template <class K>
using PlacePtr = std::shared_ptr<const CycloPlace<K>>;

/// Element of k[q]/(Phi_n): a representative of degree < deg Phi_n plus its
/// place. A default-constructed element (or one made by from_int) carries no
/// place yet and adopts the place of the first element it is combined with.
/// Division throws BadReduction when the divisor shares a factor with Phi_n.
template <class K>
class CycloElem {
public:
    CycloElem() = default;
    explicit CycloElem(long n) : rep_(QPoly<K>(K::from_int(n))) {}
    CycloElem(QPoly<K> rep, PlacePtr<K> place) : rep_(std::move(rep)), place_(std::move(place)) {
        if (place_ && rep_.degree() >= place_->phi.degree()) {
            if constexpr (std::is_same_v<K, Rational>) {
                mpz_class den;
                detail::ZPoly z = detail::to_zpoly(rep_, &den);
                detail::zmod_monic(z, place_->zphi);
                rep_ = from_scaled(z, den);
            } else {
                rep_ = rep_ % place_->phi;
            }
        }
    }

    static CycloElem zero() { return CycloElem(); }
    static CycloElem one() { return CycloElem(1); }
    static CycloElem from_int(long n) { return CycloElem(n); }
    /// The class of q at the place.
    static CycloElem q_class(const PlacePtr<K>& pl) { return CycloElem(QPoly<K>::gen(), pl); }

    const QPoly<K>& rep() const { return rep_; }
    const PlacePtr<K>& place() const { return place_; }
    bool is_zero() const { return rep_.is_zero(); }
    bool is_one() const { return rep_.is_one(); }

    CycloElem operator-() const { return CycloElem(-rep_, place_); }

    friend CycloElem operator+(const CycloElem& a, const CycloElem& b) {
        auto pl = join(a, b);
        return CycloElem(a.rep_ + b.rep_, pl);
    }
    friend CycloElem operator-(const CycloElem& a, const CycloElem& b) {
        auto pl = join(a, b);
        return CycloElem(a.rep_ - b.rep_, pl);
    }
    friend CycloElem operator*(const CycloElem& a, const CycloElem& b) {
        auto pl = join(a, b);
        if constexpr (std::is_same_v<K, Rational>) {
            // integer kernel: convolution and monic reduction over Z with a
            // shared denominator; an order of magnitude cheaper than per-
            // coefficient rational arithmetic
            if (pl && !a.is_zero() && !b.is_zero()) {
                mpz_class da, db;
                detail::ZPoly za = detail::to_zpoly(a.rep_, &da);
                detail::ZPoly zb = detail::to_zpoly(b.rep_, &db);
                detail::ZPoly prod = detail::zmul(za, zb);
                detail::zmod_monic(prod, pl->zphi);
                CycloElem r;
                r.place_ = pl;
                r.rep_ = from_scaled(prod, da * db);
                return r;
            }
        }
        return CycloElem(a.rep_ * b.rep_, pl);
    }
    friend CycloElem operator/(const CycloElem& a, const CycloElem& b) { return a * b.inverse(); }
    CycloElem& operator+=(const CycloElem& o) { return *this = *this + o; }
    CycloElem& operator-=(const CycloElem& o) { return *this = *this - o; }
    CycloElem& operator*=(const CycloElem& o) { return *this = *this * o; }
    CycloElem& operator/=(const CycloElem& o) { return *this = *this / o; }

    CycloElem inverse() const {
        if (is_zero()) {
            if (place_) throw BadReduction(place_->order);
            throw DivisionByZero();
        }
        if (!place_) {
            // placeholder constant: invertible in the base field
            K c = rep_.coeff(0);
            if (rep_.degree() != 0) throw Error("placeholder cyclotomic element of positive degree");
            return CycloElem(QPoly<K>(c.inverse()), nullptr);
        }
        if constexpr (std::is_same_v<K, Rational>) {
            // integer PRS keeps the coefficient heights down
            mpz_class den;
            auto za = detail::to_zpoly(rep_, &den);
            auto zm = detail::to_zpoly(place_->phi);
            auto [u, c] = detail::zext_inv(za, zm);
            if (sgn(c) == 0) throw BadReduction(place_->order);
            std::vector<Rational> out;
            out.reserve(u.size());
            for (const auto& z : u) out.push_back(Rational(mpq_class(z * den, c)));
            return CycloElem(QPoly<K>(std::move(out)), place_);
        } else {
            auto [g, u] = half_ext_gcd(rep_, place_->phi);
            if (g.degree() != 0) throw BadReduction(place_->order);
            return CycloElem(u.scaled(g.lead().inverse()), place_);
        }
    }

    CycloElem pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        CycloElem r = one(), b = *this;
        unsigned long u = static_cast<unsigned long>(e);
        while (u) {
            if (u & 1) r *= b;
            b = b * b;
            u >>= 1;
        }
        return r;
    }

    friend bool operator==(const CycloElem& a, const CycloElem& b) {
        auto pl = join(a, b);
        if (!pl) return a.rep_ == b.rep_;
        return (a.rep_ - b.rep_) % pl->phi == QPoly<K>::zero();
    }
    friend bool operator!=(const CycloElem& a, const CycloElem& b) { return !(a == b); }

    friend std::ostream& operator<<(std::ostream& os, const CycloElem& a) {
        a.rep_.print(os, true);
        return os;
    }

private:
    QPoly<K> rep_;
    PlacePtr<K> place_;

    /// Rebuilds a rational-coefficient representative from an integer poly
    /// over a shared denominator, stripping the common content first.
    static QPoly<K> from_scaled(detail::ZPoly z, mpz_class den) {
        static_assert(std::is_same_v<K, Rational>);
        if (z.empty()) return QPoly<K>::zero();
        mpz_class g = detail::zcontent(z);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), den.get_mpz_t());
        if (g != 1 && sgn(g) != 0) {
            detail::zdiv_scalar(z, g);
            mpz_divexact(den.get_mpz_t(), den.get_mpz_t(), g.get_mpz_t());
        }
        std::vector<Rational> out;
        out.reserve(z.size());
        for (const auto& c : z) out.push_back(Rational(mpq_class(c, den)));
        return QPoly<K>(std::move(out));
    }

    static PlacePtr<K> join(const CycloElem& a, const CycloElem& b) {
        if (a.place_ && b.place_) {
            if (a.place_->order != b.place_->order || a.place_->characteristic != b.place_->characteristic)
                throw Error("mixing elements of different cyclotomic places");
            return a.place_;
        }
        return a.place_ ? a.place_ : b.place_;
    }
};

/// Reduction k(q) -> k[q]/(Phi_n); BadReduction when the denominator shares
/// a factor with Phi_n (the place must then be excluded from scans).
template <class K>
CycloElem<K> reduce_mod_place(const QRat<K>& f, const PlacePtr<K>& pl) {
    CycloElem<K> num(f.num(), pl);
    if (f.den().is_one()) return num;
    CycloElem<K> den(f.den(), pl);
    return num * den.inverse();
}

/// ord_{Phi_n} of a nonzero polynomial: how many times Phi_n divides it.
template <class K>
long phi_order(QPoly<K> f, const QPoly<K>& phi) {
    long ord = 0;
    while (true) {
        auto [quot, rem] = QPoly<K>::divmod(f, phi);
        if (!rem.is_zero()) return ord;
        ++ord;
        f = quot;
        if (f.is_zero()) throw Error("phi_order of zero");
    }
}

/// Phi_n-adic valuation of a nonzero element of k(q).
template <class K>
long cyclo_valuation(const QRat<K>& f, const PlacePtr<K>& pl) {
    if (f.is_zero()) throw ZeroInput();
    long v = phi_order(f.num(), pl->phi);
    if (!f.den().is_one()) v -= phi_order(f.den(), pl->phi);
    return v;
}

/// Gauss valuation at a cyclotomic place: min coefficient valuation of the
/// numerator minus min coefficient valuation of the denominator. Well
/// defined on any representation of the fraction (Gauss's lemma), so both
/// the canonical and the pair forms are accepted.
template <class K>
long gauss_valuation(const XRat<K>& f, const PlacePtr<K>& pl) {
    if (f.is_zero()) throw ZeroInput();
    auto min_val = [&pl](const XPoly<K>& p) {
        long m = 0;
        bool first = true;
        for (const auto& c : p.coeffs()) {
            if (c.is_zero()) continue;
            long v = cyclo_valuation(c, pl);
            if (first || v < m) { m = v; first = false; }
        }
        return m;
    };
    return min_val(f.num()) - min_val(f.den());
}

/// Pair-form Gauss valuation: num and den are bivariate polynomials.
template <class K>
long gauss_valuation_pair(const BPoly<K>& num, const BPoly<K>& den, const PlacePtr<K>& pl) {
    if (num.is_zero()) throw ZeroInput();
    auto min_val = [&pl](const BPoly<K>& p) {
        long m = 0;
        bool first = true;
        for (const auto& c : p.coeffs()) {
            if (c.is_zero()) continue;
            long v = phi_order(c, pl->phi);
            if (first || v < m) { m = v; first = false; }
        }
        return m;
    };
    return min_val(num) - min_val(den);
}

/// Entrywise reduction of a rational function in x: maps each level-1
/// coefficient through reduce_mod_place. The result lives over the quotient
/// ring; in char 0 that ring is a field and the fraction is canonical.
template <class K>
RatFn<CycloElem<K>, 'x'> reduce_xrat(const XRat<K>& f, const PlacePtr<K>& pl) {
    auto lower = [&pl](const XPoly<K>& p) {
        std::vector<CycloElem<K>> out;
        out.reserve(static_cast<std::size_t>(p.degree() + 1));
        for (const auto& c : p.coeffs()) out.push_back(reduce_mod_place(c, pl));
        return UPoly<CycloElem<K>, 'x'>(std::move(out));
    };
    auto den = lower(f.den());
    if (den.is_zero()) throw BadReduction(pl->order);
    return RatFn<CycloElem<K>, 'x'>(lower(f.num()), den);
}

template <class K>
using CycloX = RatFn<CycloElem<K>, 'x'>;
template <class K>
using CycloXPoly = UPoly<CycloElem<K>, 'x'>;

/// sigma_q on the reduced side: x <- qbar^k x with qbar the class of q.
template <class K>
CycloX<K> sigma_q_reduced(const CycloX<K>& f, const PlacePtr<K>& pl, long k) {
    long n = pl->order;
    long e = ((k % n) + n) % n;
    return f.scale_var(CycloElem<K>::q_class(pl).pow(e));
}

}  // namespace qcurv
