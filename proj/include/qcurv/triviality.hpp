// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <utility>

#include "curvature.hpp"
#include "solutions.hpp"

namespace qcurv {

enum class VerdictKind { TrivialCertified, NontrivialWitness, ConjecturallyTrivial };

template <class K>
struct Verdict {
    VerdictKind kind;
    long witness_order = 0;                       // NontrivialWitness
    long scan_bound = 0;                          // ConjecturallyTrivial / scans
    std::optional<Matrix<XRat<K>>> solution;      // TrivialCertified
    std::string note;
    CurvatureReport scan;

    bool is_trivial_certified() const { return kind == VerdictKind::TrivialCertified; }
    std::string str() const {
        switch (kind) {
            case VerdictKind::TrivialCertified: return "TrivialCertified";
            case VerdictKind::NontrivialWitness: return "NontrivialWitness(" + std::to_string(witness_order) + ")";
            case VerdictKind::ConjecturallyTrivial: return "ConjecturallyTrivial(" + std::to_string(scan_bound) + ")";
        }
        return "?";
    }
};

struct TrivialityOptions {
    long scan_bound = 30;
    long degree_bound = 10;
    long truncation = 40;
    unsigned long characteristic = 0;
};

/// Exact substitution check of a fundamental solution: Y(qx) = A(x) Y(x)
/// and det Y != 0.
template <class K>
bool verify_fundamental_solution(const QDiffSystem<K>& sys, const Matrix<XRat<K>>& y) {
    if (y.rows() != sys.dim || y.cols() != sys.dim) return false;
    if (y.det().is_zero()) return false;
    return sigma_q_matrix(y, 1) == sys.a * y;
}

/// Two-sided desk-scale harness: a nonzero class at a good place is a sound
/// nontriviality witness (easy direction of the triviality criterion); the
/// converse direction is replaced by explicit certification: series solution,
/// rational reconstruction, exact substitution. When every good place is
/// Zero but reconstruction fails within bounds, the verdict stays
/// "conjecturally trivial" with the scan bound attached.
template <class K>
Verdict<K> triviality_verdict(const QDiffSystem<K>& sys, const TrivialityOptions& opt = {}) {
    Verdict<K> v;
    v.scan_bound = opt.scan_bound;
    ScanOptions sopt;
    sopt.characteristic = opt.characteristic;
    v.scan = curvature_scan(sys, 2, opt.scan_bound, sopt);
    if (auto w = v.scan.first_nonzero_good_place()) {
        v.kind = VerdictKind::NontrivialWitness;
        v.witness_order = *w;
        v.note = "curvature class " + [&] {
            for (const auto& [n, c] : v.scan.classes)
                if (n == *w) return c.str();
            return std::string("?");
        }() + " at order " + std::to_string(*w);
        return v;
    }
    if (v.scan.count_zero == 0) {
        v.kind = VerdictKind::ConjecturallyTrivial;
        v.note = "no good places in scan range";
        return v;
    }
    // certification attempt
    long order = std::max(opt.truncation, 2 * opt.degree_bound + 1);
    try {
        auto normalized = normalize_to_identity(sys);
        auto series = series_solution(normalized.sys, order);
        auto rec = pade_reconstruct(normalized.sys, series, opt.degree_bound);
        if (rec) {
            Matrix<XRat<K>> y = normalized.gauge * *rec;
            if (verify_fundamental_solution(sys, y)) {
                v.kind = VerdictKind::TrivialCertified;
                v.solution = std::move(y);
                v.note = "fundamental solution verified by exact substitution";
                return v;
            }
            v.kind = VerdictKind::ConjecturallyTrivial;
            v.note = "reconstructed candidate failed the exact substitution check";
            return v;
        }
        v.kind = VerdictKind::ConjecturallyTrivial;
        v.note = "rational reconstruction found no match within degree bound " +
                 std::to_string(opt.degree_bound);
        return v;
    } catch (const Error& e) {
        v.kind = VerdictKind::ConjecturallyTrivial;
        v.note = std::string("certification stopped: ") + e.what();
        return v;
    }
}

}  // namespace qcurv
