// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <utility>
#include <vector>

#include "ratfn.hpp"
#include "zgcd.hpp"

namespace qcurv {
namespace detail {

// Bivariate integer polynomials: row i is the Z[q]-coefficient of Var^i.
struct BZ {
    std::vector<ZPoly> rows;

    bool is_zero() const { return rows.empty(); }
    long degree() const { return static_cast<long>(rows.size()) - 1; }
    const ZPoly& lead() const { return rows.back(); }

    void trim() {
        while (!rows.empty() && rows.back().empty()) rows.pop_back();
    }
};

/// q-content of a bivariate polynomial (primitive positive-leading gcd).
inline ZPoly bz_content(const BZ& p) {
    ZPoly g;
    for (const auto& row : p.rows) {
        if (row.empty()) continue;
        g = g.empty() ? row : zgcd(g, row);
        if (g.size() == 1 && g[0] == 1) break;
    }
    zprimitive(g);
    return g;
}

inline void bz_make_primitive(BZ& p) {
    p.trim();
    if (p.is_zero()) return;
    ZPoly c = bz_content(p);
    if (c.size() == 1 && c[0] == 1) return;
    for (auto& row : p.rows)
        if (!row.empty()) row = zdiv_exact(row, c);
}

/// One pseudo-division pass: returns prem(a, b), content-stripped by caller.
inline BZ bz_prem(BZ a, const BZ& b) {
    long db = b.degree();
    while (!a.is_zero() && a.degree() >= db) {
        long d = a.degree() - db;
        ZPoly la = a.lead();
        // a = lb * a - la * b * Var^d
        for (auto& row : a.rows) row = zmul(row, b.lead());
        for (long i = 0; i <= db; ++i) {
            auto& dst = a.rows[static_cast<std::size_t>(i + d)];
            dst = zsub(dst, zmul(la, b.rows[static_cast<std::size_t>(i)]));
        }
        a.trim();
    }
    return a;
}

/// Full clearing of a polynomial over Q(q): multiplies by the q-denominator
/// lcm and the rational content, then strips to a primitive integer form.
template <char Var>
BZ bz_from(const UPoly<RatFn<Rational, 'q'>, Var>& p) {
    using QP = UPoly<Rational, 'q'>;
    QP den = QP::one();
    for (const auto& c : p.coeffs()) {
        if (c.is_zero() || c.den().is_one()) continue;
        QP g = gcd_monic(den, c.den());
        den = den * QP::div_exact(c.den(), g);
    }
    // rational lcm of all coefficient denominators after clearing
    std::vector<QP> cleared;
    cleared.reserve(p.coeffs().size());
    mpz_class big_den = 1;
    for (const auto& c : p.coeffs()) {
        QP e = c.is_zero() ? QP::zero() : c.num() * QP::div_exact(den, c.den());
        for (const auto& r : e.coeffs()) mpz_lcm(big_den.get_mpz_t(), big_den.get_mpz_t(), r.den().get_mpz_t());
        cleared.push_back(std::move(e));
    }
    BZ out;
    out.rows.reserve(cleared.size());
    for (const auto& e : cleared) {
        ZPoly row;
        row.reserve(static_cast<std::size_t>(e.degree()) + 1);
        for (long i = 0; i <= e.degree(); ++i) {
            const Rational& r = e.coeff(i);
            row.push_back(r.num() * (big_den / r.den()));
        }
        ztrim(row);
        out.rows.push_back(std::move(row));
    }
    out.trim();
    bz_make_primitive(out);
    return out;
}

}  // namespace detail

/// gcd over Q(q)[Var] through a primitive pseudo-remainder sequence on the
/// cleared integer bivariate forms.
template <char Var>
UPoly<RatFn<Rational, 'q'>, Var> gcd_monic(const UPoly<RatFn<Rational, 'q'>, Var>& a,
                                           const UPoly<RatFn<Rational, 'q'>, Var>& b) {
    using QR = RatFn<Rational, 'q'>;
    using QP = UPoly<Rational, 'q'>;
    using P = UPoly<QR, Var>;
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    detail::BZ za = detail::bz_from(a);
    detail::BZ zb = detail::bz_from(b);
    if (za.degree() < zb.degree()) std::swap(za, zb);
    while (!zb.is_zero()) {
        detail::BZ r = detail::bz_prem(za, zb);
        detail::bz_make_primitive(r);
        za = std::move(zb);
        zb = std::move(r);
    }
    // lift to a monic polynomial over Q(q)
    std::vector<QR> out;
    out.reserve(static_cast<std::size_t>(za.degree()) + 1);
    auto lift_row = [](const detail::ZPoly& row) {
        std::vector<Rational> c;
        c.reserve(row.size());
        for (const auto& z : row) c.push_back(Rational(mpq_class(z)));
        return QP(std::move(c));
    };
    QP lead = lift_row(za.lead());
    for (long i = 0; i <= za.degree(); ++i)
        out.emplace_back(lift_row(za.rows[static_cast<std::size_t>(i)]), lead);
    return P(std::move(out));
}

}  // namespace qcurv
