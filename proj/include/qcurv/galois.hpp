// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "curvature.hpp"
#include "dynamics.hpp"
#include "triviality.hpp"

namespace qcurv {

enum class GroupKind { Trivial, FiniteCyclic, FullGm, SubTorus, Inconclusive };

struct GroupDescriptor {
    GroupKind kind = GroupKind::Inconclusive;
    long cyclic_order = 0;                         // FiniteCyclic
    std::vector<std::vector<long>> torus_lattice;  // SubTorus: basis rows
    std::vector<bool> lattice_certified;           // per basis row
    long scan_bound = 0;
    bool certified = false;
    std::string note;

    std::string str() const {
        switch (kind) {
            case GroupKind::Trivial: return "Trivial";
            case GroupKind::FiniteCyclic: return "FiniteCyclic(" + std::to_string(cyclic_order) + ")";
            case GroupKind::FullGm: return "FullGm";
            case GroupKind::SubTorus: {
                std::string s = "SubTorus{";
                for (std::size_t i = 0; i < torus_lattice.size(); ++i) {
                    if (i) s += ", ";
                    s += "(";
                    for (std::size_t j = 0; j < torus_lattice[i].size(); ++j) {
                        if (j) s += ",";
                        s += std::to_string(torus_lattice[i][j]);
                    }
                    s += ")";
                }
                return s + "}";
            }
            case GroupKind::Inconclusive: return "Inconclusive(" + std::to_string(scan_bound) + ")";
        }
        return "?";
    }
};

enum class DiffGroupKind { Trivial, MultiplicativeFlat, FullGmDiff, Inconclusive };

struct DiffGroupDescriptor {
    DiffGroupKind kind = DiffGroupKind::Inconclusive;
    long scan_bound = 0;
    long witness_order = 0;  // first non-monomial place for FullGmDiff
    std::string note;

    std::string str() const {
        switch (kind) {
            case DiffGroupKind::Trivial: return "Trivial";
            case DiffGroupKind::MultiplicativeFlat: return "MultiplicativeFlat";
            case DiffGroupKind::FullGmDiff: return "FullGmDiff";
            case DiffGroupKind::Inconclusive: return "Inconclusive";
        }
        return "?";
    }
};

/// c * x^m with c a unit of the residue ring (in char 0 any nonzero c).
template <class K>
bool is_monomial_fraction(const CycloX<K>& f) {
    if (f.is_zero()) return false;
    return f.num().is_monomial() && f.den().is_monomial();
}

struct Rank1Options {
    long scan_bound = 30;
    long max_order = 12;
    long degree_bound = 10;
    long truncation = 40;
    unsigned long characteristic = 0;
};

/// Generic Galois group of a rank-1 module, in the finite-cyclic / full-Gm
/// regime: Trivial needs a certified rational solution; FiniteCyclic(r) is
/// the minimal r <= max_order whose r-th power has an all-Zero scan; FullGm
/// when no power trivializes and a nonzero curvature witnessed the module.
template <class K>
GroupDescriptor rank1_generic_group(const XRat<K>& a, const Rank1Options& opt = {}) {
    if (a.is_zero()) throw ZeroInput();
    GroupDescriptor out;
    out.scan_bound = opt.scan_bound;
    TrivialityOptions topt;
    topt.scan_bound = opt.scan_bound;
    topt.degree_bound = opt.degree_bound;
    topt.truncation = opt.truncation;
    topt.characteristic = opt.characteristic;

    auto base = triviality_verdict(QDiffSystem<K>::scalar(a), topt);
    if (base.kind == VerdictKind::TrivialCertified) {
        out.kind = GroupKind::Trivial;
        out.certified = true;
        return out;
    }
    if (base.kind == VerdictKind::ConjecturallyTrivial) {
        out.kind = GroupKind::Inconclusive;
        out.note = "all-zero scan but no certificate: " + base.note;
        return out;
    }
    ScanOptions sopt;
    sopt.characteristic = opt.characteristic;
    for (long r = 2; r <= opt.max_order; ++r) {
        QDiffSystem<K> power = QDiffSystem<K>::scalar(a.pow(r));
        auto rep = curvature_scan(power, 2, opt.scan_bound, sopt);
        if (rep.all_good_places_zero()) {
            out.kind = GroupKind::FiniteCyclic;
            out.cyclic_order = r;
            auto cert = triviality_verdict(power, topt);
            out.certified = cert.kind == VerdictKind::TrivialCertified;
            if (!out.certified) out.note = "order detected by scan; certification: " + cert.note;
            return out;
        }
    }
    out.kind = GroupKind::FullGm;
    out.note = "nontrivial at order " + std::to_string(base.witness_order) +
               "; no tensor power up to " + std::to_string(opt.max_order) + " trivializes";
    return out;
}

/// Differential class of a rank-1 module from the shape of its curvatures:
/// monomial scalars c x^m satisfy d(dy/y) = 0 (multiplicative flat class);
/// a single non-monomial curvature pushes the class to the full group.
template <class K>
DiffGroupDescriptor rank1_differential_class(const XRat<K>& a, long scan_bound = 30,
                                             unsigned long characteristic = 0) {
    if (a.is_zero()) throw ZeroInput();
    DiffGroupDescriptor out;
    out.scan_bound = scan_bound;
    QDiffSystem<K> sys = QDiffSystem<K>::scalar(a);
    long good = 0, ones = 0, monomials = 0;
    for (long n = 2; n <= scan_bound; ++n) {
        if (characteristic != 0 && n % static_cast<long>(characteristic) == 0) continue;
        try {
            auto pl = CycloPlace<K>::make(n, characteristic);
            auto c = curvature(sys, pl).at(0, 0);
            ++good;
            if (c.is_one()) { ++ones; ++monomials; continue; }
            if (is_monomial_fraction(c)) { ++monomials; continue; }
            out.kind = DiffGroupKind::FullGmDiff;
            out.witness_order = n;
            out.note = "non-monomial curvature at order " + std::to_string(n);
            return out;
        } catch (const BadReduction&) {
            continue;
        }
    }
    if (good == 0) {
        out.kind = DiffGroupKind::Inconclusive;
        out.note = "no good places in range";
        return out;
    }
    if (ones == good) {
        out.kind = DiffGroupKind::Trivial;
        return out;
    }
    out.kind = DiffGroupKind::MultiplicativeFlat;
    out.note = "curvatures are unit monomials at every good place scanned";
    return out;
}

namespace detail {

/// Row-style Hermite normal form over Z; returns a basis of the row lattice.
inline std::vector<std::vector<long>> hnf_basis(std::vector<std::vector<long>> rows) {
    if (rows.empty()) return {};
    std::size_t cols = rows[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        // find a pivot
        std::size_t piv = r;
        bool found = false;
        for (std::size_t i = r; i < rows.size(); ++i)
            if (rows[i][c] != 0) { piv = i; found = true; break; }
        if (!found) continue;
        std::swap(rows[r], rows[piv]);
        // gcd-reduce below
        for (std::size_t i = r + 1; i < rows.size(); ++i) {
            while (rows[i][c] != 0) {
                long qq = rows[r][c] / rows[i][c];
                for (std::size_t j = 0; j < cols; ++j) rows[r][j] -= qq * rows[i][j];
                std::swap(rows[r], rows[i]);
            }
        }
        if (rows[r][c] < 0)
            for (std::size_t j = 0; j < cols; ++j) rows[r][j] = -rows[r][j];
        // reduce above
        for (std::size_t i = 0; i < r; ++i) {
            long qq = rows[i][c] / rows[r][c];
            long rem = rows[i][c] % rows[r][c];
            if (rem < 0) --qq;
            if (qq != 0)
                for (std::size_t j = 0; j < cols; ++j) rows[i][j] -= qq * rows[r][j];
        }
        ++r;
    }
    rows.resize(r);
    return rows;
}

}  // namespace detail

struct DiagonalOptions {
    long scan_bound = 30;
    long height = 3;
    long degree_bound = 10;
    long truncation = 40;
    unsigned long characteristic = 0;
};

/// Multiplicative-relation lattice of a diagonal module: integer vectors m
/// with |m|_inf <= height whose monomial product prod a_i^{m_i} has an
/// all-Zero scan; basis in Hermite normal form, each basis relation verified
/// by the certification pipeline where possible.
template <class K>
GroupDescriptor diagonal_group(const std::vector<XRat<K>>& entries, const DiagonalOptions& opt = {}) {
    for (const auto& a : entries)
        if (a.is_zero()) throw ZeroInput();
    long nu = static_cast<long>(entries.size());
    GroupDescriptor out;
    out.kind = GroupKind::SubTorus;
    out.scan_bound = opt.scan_bound;
    ScanOptions sopt;
    sopt.characteristic = opt.characteristic;

    std::vector<std::vector<long>> found;
    std::vector<long> m(static_cast<std::size_t>(nu), -opt.height);
    auto advance = [&]() {
        for (long i = 0; i < nu; ++i) {
            if (++m[static_cast<std::size_t>(i)] <= opt.height) return true;
            m[static_cast<std::size_t>(i)] = -opt.height;
        }
        return false;
    };
    do {
        bool zero = true, neg_first = false;
        for (long i = 0; i < nu; ++i) {
            if (m[static_cast<std::size_t>(i)] != 0) {
                zero = false;
                neg_first = m[static_cast<std::size_t>(i)] < 0;
                break;
            }
        }
        if (zero || neg_first) continue;  // skip 0 and mirror images
        XRat<K> prod = XRat<K>::one();
        for (long i = 0; i < nu; ++i) prod *= entries[static_cast<std::size_t>(i)].pow(m[static_cast<std::size_t>(i)]);
        auto rep = curvature_scan(QDiffSystem<K>::scalar(prod), 2, opt.scan_bound, sopt);
        if (rep.all_good_places_zero()) found.push_back(m);
    } while (advance());

    out.torus_lattice = detail::hnf_basis(std::move(found));
    TrivialityOptions topt;
    topt.scan_bound = opt.scan_bound;
    topt.degree_bound = opt.degree_bound;
    topt.truncation = opt.truncation;
    topt.characteristic = opt.characteristic;
    for (const auto& row : out.torus_lattice) {
        XRat<K> prod = XRat<K>::one();
        for (long i = 0; i < nu; ++i) prod *= entries[static_cast<std::size_t>(i)].pow(row[static_cast<std::size_t>(i)]);
        auto cert = triviality_verdict(QDiffSystem<K>::scalar(prod), topt);
        out.lattice_certified.push_back(cert.kind == VerdictKind::TrivialCertified);
    }
    out.certified = !out.lattice_certified.empty() &&
                    std::all_of(out.lattice_certified.begin(), out.lattice_certified.end(),
                                [](bool b) { return b; });
    if (out.torus_lattice.empty()) out.note = "no multiplicative relations up to the height bound";
    return out;
}

struct ConstancyReport {
    bool constant_group_supported = true;
    long places_checked = 0;
    bool curvatures_x_free = true;
};

/// For x-free A the curvatures A^n mod Phi_n are x-free as well, supporting
/// the statement that the group is defined over the constants. NotConstant
/// when A involves x.
template <class K>
ConstancyReport constancy_check(const QDiffSystem<K>& sys, long scan_bound = 30,
                                unsigned long characteristic = 0) {
    for (long i = 0; i < sys.dim; ++i)
        for (long j = 0; j < sys.dim; ++j) {
            const auto& e = sys.a.at(i, j);
            if (!(e.den().is_one() && e.num().degree() <= 0)) throw NotConstant();
        }
    ConstancyReport rep;
    for (long n = 2; n <= scan_bound; ++n) {
        if (characteristic != 0 && n % static_cast<long>(characteristic) == 0) continue;
        try {
            auto pl = CycloPlace<K>::make(n, characteristic);
            auto c = curvature(sys, pl);
            ++rep.places_checked;
            for (long i = 0; i < sys.dim; ++i)
                for (long j = 0; j < sys.dim; ++j) {
                    const auto& e = c.at(i, j);
                    if (!(e.den().is_one() && e.num().degree() <= 0)) rep.curvatures_x_free = false;
                }
        } catch (const BadReduction&) {
            continue;
        }
    }
    rep.constant_group_supported = rep.curvatures_x_free;
    return rep;
}

}  // namespace qcurv
