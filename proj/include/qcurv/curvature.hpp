// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "parallel.hpp"
#include "qdiff.hpp"

namespace qcurv {

enum class CurvatureKind { Zero, Nilpotent, Other, BadReduction };

struct CurvatureClass {
    CurvatureKind kind = CurvatureKind::Other;
    long nilpotent_index = 0;  // minimal k >= 2 with (C - Id)^k = 0

    bool is_zero() const { return kind == CurvatureKind::Zero; }
    bool is_bad() const { return kind == CurvatureKind::BadReduction; }

    std::string str() const {
        switch (kind) {
            case CurvatureKind::Zero: return "Zero";
            case CurvatureKind::Nilpotent: return "Nilpotent(" + std::to_string(nilpotent_index) + ")";
            case CurvatureKind::Other: return "Other";
            case CurvatureKind::BadReduction: return "BadReduction";
        }
        return "?";
    }
    friend bool operator==(const CurvatureClass& a, const CurvatureClass& b) {
        return a.kind == b.kind && a.nilpotent_index == b.nilpotent_index;
    }
};

enum class CurvatureMode { Incremental, Full };

template <class K>
Matrix<CycloX<K>> reduce_matrix(const Matrix<XRat<K>>& m, const PlacePtr<K>& pl) {
    return m.map([&pl](const XRat<K>& f) { return reduce_xrat(f, pl); });
}

/// kappa_v-curvature: A_n with every coefficient reduced modulo Phi_n,
/// a k_v(x)-linear datum since q^n = 1 at the place.
///
/// Incremental mode reduces A first and multiplies on the reduced side with
/// binary splitting on the cocycle A_{m+m'}(x) = A_m(q^{m'}x) A_{m'}(x);
/// Full mode iterates symbolically over k(q)(x) and reduces once. They agree
/// wherever both are defined (ring homomorphism), which is tested; the sets
/// of excluded places can differ at finitely many n.
template <class K>
Matrix<CycloX<K>> curvature(const QDiffSystem<K>& sys, const PlacePtr<K>& pl,
                            CurvatureMode mode = CurvatureMode::Incremental) {
    long n = pl->order;
    if (mode == CurvatureMode::Full) return reduce_matrix(iterate(sys, n), pl);
    Matrix<CycloX<K>> a = reduce_matrix(sys.a, pl);
    auto shift = [&pl](const Matrix<CycloX<K>>& m, long k) {
        return m.map([&pl, k](const CycloX<K>& f) { return sigma_q_reduced(f, pl, k); });
    };
    Matrix<CycloX<K>> acc = Matrix<CycloX<K>>::identity(sys.dim);
    long len = 0;
    bool started = false;
    for (long bit = 63; bit >= 0; --bit) {
        if (!started) {
            if (!((n >> bit) & 1)) continue;
            started = true;
            acc = a;
            len = 1;
            continue;
        }
        acc = shift(acc, len) * acc;
        len *= 2;
        if ((n >> bit) & 1) {
            acc = shift(a, len) * acc;
            len += 1;
        }
    }
    return acc;
}

/// Zero / Nilpotent(k) / Other / BadReduction per the curvature definitions;
/// never throws for reduction problems (BadReduction is a class here).
template <class K>
CurvatureClass classify(const QDiffSystem<K>& sys, const PlacePtr<K>& pl,
                        CurvatureMode mode = CurvatureMode::Incremental) {
    Matrix<CycloX<K>> c;
    try {
        c = curvature(sys, pl, mode);
    } catch (const BadReduction&) {
        return {CurvatureKind::BadReduction, 0};
    }
    if (c.is_identity()) return {CurvatureKind::Zero, 0};
    try {
        Matrix<CycloX<K>> n = c - Matrix<CycloX<K>>::identity(sys.dim);
        Matrix<CycloX<K>> p = n;
        for (long k = 2; k <= sys.dim; ++k) {
            p = p * n;
            if (p.is_zero()) return {CurvatureKind::Nilpotent, k};
        }
    } catch (const BadReduction&) {
        return {CurvatureKind::BadReduction, 0};
    }
    return {CurvatureKind::Other, 0};
}

struct ScanOptions {
    bool prime_orders_only = false;
    CurvatureMode mode = CurvatureMode::Incremental;
    unsigned long characteristic = 0;
};

inline bool is_prime_long(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

struct CurvatureReport {
    long n_min = 0, n_max = 0;
    std::vector<std::pair<long, CurvatureClass>> classes;  // ordered by n
    long count_zero = 0, count_nilpotent = 0, count_other = 0, count_bad = 0;
    std::string verdict_hint;

    std::optional<long> first_nonzero_good_place() const {
        for (const auto& [n, c] : classes)
            if (c.kind == CurvatureKind::Nilpotent || c.kind == CurvatureKind::Other) return n;
        return std::nullopt;
    }
    bool all_good_places_zero() const {
        return count_nilpotent == 0 && count_other == 0 && count_zero > 0;
    }
};

/// Deterministic per-place classification over [n_min, n_max]; places where
/// the order is divisible by the characteristic are recorded as BadReduction
/// (they do not exist as cyclotomic places of the reduced tower).
template <class K>
CurvatureReport curvature_scan(const QDiffSystem<K>& sys, long n_min, long n_max,
                               const ScanOptions& opt = {}) {
    if (n_min < 2 || n_max < n_min) throw IndexOutOfRange();
    std::vector<long> orders;
    for (long n = n_min; n <= n_max; ++n) {
        if (opt.prime_orders_only && !is_prime_long(n)) continue;
        orders.push_back(n);
    }
    std::vector<CurvatureClass> out(orders.size());
    parallel_for(orders.size(), [&](std::size_t i) {
        long n = orders[i];
        if (opt.characteristic != 0 && n % static_cast<long>(opt.characteristic) == 0) {
            out[i] = {CurvatureKind::BadReduction, 0};
            return;
        }
        auto pl = CycloPlace<K>::make(n, opt.characteristic);
        out[i] = classify(sys, pl, opt.mode);
    });
    CurvatureReport rep;
    rep.n_min = n_min;
    rep.n_max = n_max;
    for (std::size_t i = 0; i < orders.size(); ++i) {
        rep.classes.emplace_back(orders[i], out[i]);
        switch (out[i].kind) {
            case CurvatureKind::Zero: ++rep.count_zero; break;
            case CurvatureKind::Nilpotent: ++rep.count_nilpotent; break;
            case CurvatureKind::Other: ++rep.count_other; break;
            case CurvatureKind::BadReduction: ++rep.count_bad; break;
        }
    }
    if (rep.all_good_places_zero())
        rep.verdict_hint = "zero curvature at every good place scanned";
    else if (auto w = rep.first_nonzero_good_place())
        rep.verdict_hint = "nonzero curvature at order " + std::to_string(*w);
    else
        rep.verdict_hint = "no good places in range";
    return rep;
}

}  // namespace qcurv
