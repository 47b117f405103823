// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmpxx.h>

#include <vector>

#include "rational.hpp"
#include "upoly.hpp"

namespace qcurv {
namespace detail {

using ZPoly = std::vector<mpz_class>;  // dense, no trailing zeros

inline void ztrim(ZPoly& p) {
    while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

inline mpz_class zcontent(const ZPoly& p) {
    mpz_class g = 0;
    for (const auto& c : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

inline void zdiv_scalar(ZPoly& p, const mpz_class& d) {
    for (auto& c : p) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
}

inline void zprimitive(ZPoly& p) {
    ztrim(p);
    if (p.empty()) return;
    mpz_class c = zcontent(p);
    if (sgn(p.back()) < 0) c = -c;
    zdiv_scalar(p, c);
}

/// Pseudo-remainder of a by b (in place on a copy): lc(b)^{da-db+1} a mod b.
inline ZPoly zprem(ZPoly a, const ZPoly& b) {
    long db = static_cast<long>(b.size()) - 1;
    const mpz_class& lb = b.back();
    while (static_cast<long>(a.size()) - 1 >= db && !a.empty()) {
        long d = static_cast<long>(a.size()) - 1 - db;
        mpz_class la = a.back();
        for (auto& c : a) c *= lb;
        for (long i = 0; i <= db; ++i)
            a[static_cast<std::size_t>(i + d)] -= la * b[static_cast<std::size_t>(i)];
        ztrim(a);
    }
    return a;
}

inline ZPoly zmul(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1, mpz_class(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (sgn(a[i]) == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    ztrim(r);
    return r;
}

inline ZPoly zsub(const ZPoly& a, const ZPoly& b) {
    ZPoly r = a;
    if (r.size() < b.size()) r.resize(b.size(), mpz_class(0));
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    ztrim(r);
    return r;
}

/// Exact division over Z (caller guarantees divisibility).
inline ZPoly zdiv_exact(ZPoly a, const ZPoly& b) {
    if (b.empty()) throw DivisionByZero("zdiv_exact by zero");
    if (a.empty()) return {};
    ZPoly q(a.size() - b.size() + 1, mpz_class(0));
    while (!a.empty() && a.size() >= b.size()) {
        std::size_t d = a.size() - b.size();
        mpz_class f;
        mpz_divexact(f.get_mpz_t(), a.back().get_mpz_t(), b.back().get_mpz_t());
        q[d] = f;
        for (std::size_t i = 0; i < b.size(); ++i) a[i + d] -= f * b[i];
        ztrim(a);
    }
    if (!a.empty()) throw Error("zdiv_exact: not divisible");
    return q;
}

/// In-place remainder modulo a monic integer polynomial (no divisions).
inline void zmod_monic(ZPoly& a, const ZPoly& m) {
    long dm = static_cast<long>(m.size()) - 1;
    while (!a.empty() && static_cast<long>(a.size()) - 1 >= dm) {
        long d = static_cast<long>(a.size()) - 1 - dm;
        mpz_class la = a.back();
        for (long i = 0; i <= dm; ++i) a[static_cast<std::size_t>(i + d)] -= la * m[static_cast<std::size_t>(i)];
        ztrim(a);
    }
}

/// Pseudo-division with quotient: lc(b)^{da-db+1} a = q b + r.
inline std::pair<ZPoly, ZPoly> zpdivrem(ZPoly a, const ZPoly& b) {
    long db = static_cast<long>(b.size()) - 1;
    const mpz_class& lb = b.back();
    ZPoly q;
    if (static_cast<long>(a.size()) - 1 >= db)
        q.assign(a.size() - b.size() + 1, mpz_class(0));
    long steps = static_cast<long>(a.size()) - 1 - db + 1;
    long done = 0;
    while (static_cast<long>(a.size()) - 1 >= db && !a.empty()) {
        long d = static_cast<long>(a.size()) - 1 - db;
        mpz_class la = a.back();
        for (auto& c : a) c *= lb;
        for (auto& c : q) c *= lb;
        q[static_cast<std::size_t>(d)] += la;
        for (long i = 0; i <= db; ++i)
            a[static_cast<std::size_t>(i + d)] -= la * b[static_cast<std::size_t>(i)];
        ztrim(a);
        ++done;
    }
    // pad the scale to the full lc^{steps} so that the identity has the
    // documented exponent regardless of early degree drops
    for (; done < steps; ++done) {
        for (auto& c : a) c *= lb;
        for (auto& c : q) c *= lb;
    }
    return {q, a};
}

/// Extended inverse modulo m over Z with content control: returns (u, c)
/// with u * a = c (mod m) and c a nonzero integer, when gcd(a, m) is
/// constant; returns c = 0 otherwise.
inline std::pair<ZPoly, mpz_class> zext_inv(const ZPoly& a, const ZPoly& m) {
    ZPoly r0 = m, r1 = a;
    ZPoly u0, u1{mpz_class(1)};
    ztrim(r1);
    while (!r1.empty() && r1.size() > 1) {
        auto [q, r2] = zpdivrem(r0, r1);
        // matching combination on the cofactors: scale = lc(r1)^{steps}
        // applied inside zpdivrem to r0; reproduce it on u0
        long steps = std::max<long>(0, static_cast<long>(r0.size()) - static_cast<long>(r1.size()) + 1);
        mpz_class scale = 1;
        for (long i = 0; i < steps; ++i) scale *= r1.back();
        ZPoly u2;
        {
            // u2 = scale*u0 - q*u1
            ZPoly qu = zmul(q, u1);
            u2 = u0;
            for (auto& c : u2) c *= scale;
            u2 = zsub(u2, qu);
        }
        // joint content strip keeps the identity and the heights small
        mpz_class g = zcontent(r2);
        for (const auto& c : u2) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (sgn(g) != 0 && g != 1) {
            zdiv_scalar(r2, g);
            zdiv_scalar(u2, g);
        }
        r0 = std::move(r1);
        r1 = std::move(r2);
        u0 = std::move(u1);
        u1 = std::move(u2);
    }
    if (r1.empty()) return {{}, mpz_class(0)};  // gcd = r0 nonconstant (or a ~ 0)
    return {u1, r1[0]};
}

/// Primitive pseudo-remainder sequence gcd over Z.
inline ZPoly zgcd(ZPoly a, ZPoly b) {
    zprimitive(a);
    zprimitive(b);
    if (a.empty()) return b;
    if (b.empty()) return a;
    if (a.size() < b.size()) std::swap(a, b);
    while (!b.empty()) {
        ZPoly r = zprem(a, b);
        zprimitive(r);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

template <char Var>
ZPoly to_zpoly(const UPoly<Rational, Var>& p, mpz_class* den_out = nullptr) {
    mpz_class den = 1;
    for (const auto& c : p.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.den().get_mpz_t());
    ZPoly out;
    out.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) out.push_back(c.num() * (den / c.den()));
    if (den_out) *den_out = den;
    return out;
}

template <char Var>
UPoly<Rational, Var> from_zpoly_monic(const ZPoly& p) {
    if (p.empty()) return UPoly<Rational, Var>::zero();
    std::vector<Rational> c;
    c.reserve(p.size());
    const mpz_class& lead = p.back();
    for (const auto& z : p) c.push_back(Rational(mpq_class(z, lead)));
    return UPoly<Rational, Var>(std::move(c));
}

}  // namespace detail

/// gcd over Q[Var] through the primitive integer PRS; avoids the coefficient
/// blowup of fraction-field Euclid.
template <char Var>
UPoly<Rational, Var> gcd_monic(const UPoly<Rational, Var>& a, const UPoly<Rational, Var>& b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    return detail::from_zpoly_monic<Var>(detail::zgcd(detail::to_zpoly(a), detail::to_zpoly(b)));
}

}  // namespace qcurv
