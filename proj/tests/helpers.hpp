// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <random>
#include <vector>

#include "qcurv/matrix.hpp"
#include "qcurv/tower.hpp"

namespace testutil {

using qcurv::Rational;
using QP = qcurv::QPoly<Rational>;
using QR = qcurv::QRat<Rational>;
using XP = qcurv::XPoly<Rational>;
using XR = qcurv::XRat<Rational>;

inline Rational rnd_rational(std::mt19937& rng, int span = 5) {
    std::uniform_int_distribution<int> num(-span, span);
    std::uniform_int_distribution<int> den(1, span);
    return Rational(num(rng), den(rng));
}

inline QP rnd_qpoly(std::mt19937& rng, int deg, bool monic = false) {
    std::uniform_int_distribution<int> d(0, deg);
    int dd = d(rng);
    std::vector<Rational> c(static_cast<std::size_t>(dd) + 1);
    for (auto& x : c) x = rnd_rational(rng, 3);
    if (monic || c.back().is_zero()) c.back() = Rational(1);
    return QP(std::move(c));
}

inline QR rnd_qrat(std::mt19937& rng, int deg) {
    QP num = rnd_qpoly(rng, deg);
    QP den = rnd_qpoly(rng, deg, true);
    if (num.is_zero()) num = QP(Rational(1));
    return QR(num, den);
}

inline QR rnd_qrat_maybe_zero(std::mt19937& rng, int deg) {
    std::uniform_int_distribution<int> z(0, 4);
    if (z(rng) == 0) return QR::zero();
    return rnd_qrat(rng, deg);
}

inline XP rnd_xpoly(std::mt19937& rng, int xdeg, int qdeg) {
    std::uniform_int_distribution<int> d(0, xdeg);
    int dd = d(rng);
    std::vector<QR> c(static_cast<std::size_t>(dd) + 1);
    for (auto& x : c) x = rnd_qrat_maybe_zero(rng, qdeg);
    bool all_zero = true;
    for (auto& x : c)
        if (!x.is_zero()) all_zero = false;
    if (all_zero || c.back().is_zero()) c.back() = QR::one();
    return XP(std::move(c));
}

inline XR rnd_xrat(std::mt19937& rng, int xdeg, int qdeg) {
    return XR(rnd_xpoly(rng, xdeg, qdeg), rnd_xpoly(rng, xdeg, qdeg));
}

inline XP rnd_xpoly_int(std::mt19937& rng, int xdeg, int qdeg) {
    std::uniform_int_distribution<int> d(0, xdeg), qd(0, qdeg), coef(-3, 3);
    int dd = d(rng);
    std::vector<QR> c(static_cast<std::size_t>(dd) + 1);
    for (auto& x : c) {
        int qq = qd(rng);
        std::vector<Rational> qc(static_cast<std::size_t>(qq) + 1);
        for (auto& y : qc) y = Rational(coef(rng));
        x = QR(QP(std::move(qc)));
    }
    if (c.back().is_zero()) c.back() = QR::one();
    return XP(std::move(c));
}

/// Random unimodular matrix (det = 1): a product of elementary triangular
/// matrices with integer polynomial entries. Its inverse and all iterates
/// stay polynomial, which keeps deep-iterate tests exact and fast.
inline qcurv::Matrix<XR> rnd_unimodular(std::mt19937& rng, long dim, int xdeg, int qdeg, int factors = 2) {
    using M = qcurv::Matrix<XR>;
    std::uniform_int_distribution<int> pick(0, static_cast<int>(dim) - 1);
    M m = M::identity(dim);
    for (int f = 0; f < factors; ++f) {
        long i = pick(rng), j = pick(rng);
        if (i == j) continue;
        M e = M::identity(dim);
        e.at(i, j) = XR(rnd_xpoly_int(rng, xdeg, qdeg));
        m = m * e;
    }
    return m;
}

/// Random invertible matrix with polynomial entries of bounded degree.
inline qcurv::Matrix<XR> rnd_invertible(std::mt19937& rng, long dim, int xdeg, int qdeg,
                                        bool constant_term_invertible = false) {
    while (true) {
        qcurv::Matrix<XR> m(dim, dim);
        for (long i = 0; i < dim; ++i)
            for (long j = 0; j < dim; ++j) m.at(i, j) = XR(rnd_xpoly(rng, xdeg, qdeg));
        if (m.det().is_zero()) continue;
        if (constant_term_invertible) {
            qcurv::Matrix<QR> c0(dim, dim);
            for (long i = 0; i < dim; ++i)
                for (long j = 0; j < dim; ++j) c0.at(i, j) = m.at(i, j).num().coeff(0);
            bool pole = false;
            for (long i = 0; i < dim && !pole; ++i)
                for (long j = 0; j < dim && !pole; ++j)
                    if (m.at(i, j).den().coeff(0).is_zero()) pole = true;
            if (pole || c0.det().is_zero()) continue;
        }
        return m;
    }
}

}  // namespace testutil
