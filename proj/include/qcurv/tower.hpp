// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "gfp.hpp"
#include "qgcd.hpp"
#include "ratfn.hpp"
#include "rational.hpp"
#include "upoly.hpp"

namespace qcurv {

// The coefficient tower: base k (Q or F_p) -> k(q) -> k(q)(x).
template <class K> using QPoly = UPoly<K, 'q'>;
template <class K> using QRat = RatFn<K, 'q'>;
template <class K> using XPoly = UPoly<QRat<K>, 'x'>;
template <class K> using XRat = RatFn<QRat<K>, 'x'>;
// Bivariate polynomials k[q][x], the gcd-free workhorse representation.
template <class K> using BPoly = UPoly<QPoly<K>, 'x'>;

template <class K> QRat<K> q_gen() { return QRat<K>::gen(); }
template <class K> XRat<K> x_gen() { return XRat<K>::gen(); }
template <class K> QRat<K> q_pow(long d) { return QRat<K>::gen().pow(d); }
template <class K> XRat<K> x_pow(long d) {
    if (d >= 0) return XRat<K>(XPoly<K>::monomial(QRat<K>::one(), d));
    return XRat<K>(XPoly<K>::one(), XPoly<K>::monomial(QRat<K>::one(), -d));
}

template <class K> XRat<K> embed_q(const QRat<K>& c) { return XRat<K>(c); }
template <class K> XRat<K> embed_base(const K& c) { return XRat<K>(QRat<K>(c)); }

/// f(x) -> f(q^k x), the k-th power of the q-dilation, a field automorphism
/// of k(q)(x). k may be negative.
template <class K>
XRat<K> sigma_q(const XRat<K>& f, long k = 1) {
    if (k == 0) return f;
    return f.scale_var(q_pow<K>(k));
}

/// The derivation d = x*d/dx on k(q)(x).
template <class K>
XRat<K> x_ddx(const XRat<K>& f) {
    const auto& n = f.num();
    const auto& d = f.den();
    XPoly<K> x = XPoly<K>::gen();
    // x*(n'd - nd')/d^2
    return XRat<K>(x * (n.derivative() * d - n * d.derivative()), d * d);
}

/// The plain derivation d/dx.
template <class K>
XRat<K> ddx(const XRat<K>& f) {
    const auto& n = f.num();
    const auto& d = f.den();
    return XRat<K>(n.derivative() * d - n * d.derivative(), d * d);
}

/// q-dilation minus identity over (q-1)x: d_q f = (f(qx)-f(x))/((q-1)x).
template <class K>
XRat<K> d_q(const XRat<K>& f) {
    XRat<K> shifted = sigma_q(f, 1);
    QRat<K> qm1 = q_gen<K>() - QRat<K>::one();
    return (shifted - f) / (x_gen<K>() * embed_q<K>(qm1));
}

/// Substitution q = 1 on a level-1 element; the denominator must not vanish.
template <class K>
K eval_q1(const QRat<K>& f) {
    K d = f.den().eval_k(K::one());
    if (d.is_zero()) throw NoConfluence();
    return f.num().eval_k(K::one()) / d;
}

/// Gcd-free pair N/D of bivariate polynomials representing an XRat.
/// Gauss valuations and evaluations are representation independent, so
/// pairs are never canonicalized.
template <class K>
struct BiFrac {
    BPoly<K> num;
    BPoly<K> den;

    static BiFrac one() { return {BPoly<K>::one(), BPoly<K>::one()}; }
    static BiFrac zero() { return {BPoly<K>::zero(), BPoly<K>::one()}; }
    bool is_zero() const { return num.is_zero(); }

    friend BiFrac operator*(const BiFrac& a, const BiFrac& b) {
        return {a.num * b.num, a.den * b.den};
    }
    friend BiFrac operator+(const BiFrac& a, const BiFrac& b) {
        return {a.num * b.den + b.num * a.den, a.den * b.den};
    }
    friend BiFrac operator-(const BiFrac& a, const BiFrac& b) {
        return {a.num * b.den - b.num * a.den, a.den * b.den};
    }
    /// Equality of the represented values, by cross multiplication.
    bool same_value(const BiFrac& o) const { return num * o.den == o.num * den; }
};

/// Clears the level-1 denominators of an exact rational function, producing
/// a bivariate pair with the same value.
template <class K>
BiFrac<K> to_bifrac(const XRat<K>& f) {
    QPoly<K> common = QPoly<K>::one();
    auto fold = [&common](const XPoly<K>& p) {
        for (const auto& c : p.coeffs())
            if (!c.den().is_one()) common *= c.den();
    };
    fold(f.num());
    fold(f.den());
    auto clear = [&common](const XPoly<K>& p) {
        std::vector<QPoly<K>> out;
        out.reserve(static_cast<std::size_t>(p.degree() + 1));
        for (const auto& c : p.coeffs())
            out.push_back(c.num() * QPoly<K>::div_exact(common, c.den()));
        return BPoly<K>(std::move(out));
    };
    return {clear(f.num()), clear(f.den())};
}

/// Converts a bivariate pair back to the canonical rational function.
/// Costs a gcd over k(q)[x]; use only on small operands.
template <class K>
XRat<K> from_bifrac(const BiFrac<K>& f) {
    auto lift = [](const BPoly<K>& p) {
        std::vector<QRat<K>> out;
        out.reserve(static_cast<std::size_t>(p.degree() + 1));
        for (const auto& c : p.coeffs()) out.emplace_back(c);
        return XPoly<K>(std::move(out));
    };
    return XRat<K>(lift(f.num), lift(f.den));
}

}  // namespace qcurv
