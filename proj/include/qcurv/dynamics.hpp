// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "cyclotomic.hpp"
#include "qdiff.hpp"

namespace qcurv {

/// Exact check f == q^d for some integer d; no scanning involved.
template <class K>
std::optional<long> exact_q_power(const QRat<K>& f) {
    if (f.is_zero()) return std::nullopt;
    if (!f.num().is_monomial() || !f.den().is_monomial()) return std::nullopt;
    if (!(f.num().lead() == f.den().lead())) return std::nullopt;
    return f.num().degree() - f.den().degree();
}

struct DynamicsResult {
    bool monomial = false;
    long exponent = 0;        // d with f = q^d, when monomial
    long witness_prime = 0;   // first failing prime otherwise
    std::vector<std::pair<long, long>> residues;  // (l, kappa_l) for passing primes
};

/// Root-of-unity dynamics test: for each prime l in the list (each
/// satisfying 2 max(deg num, deg den) < l - 1), checks f^l = 1 mod Phi_l
/// and locates kappa_l with f = q^{kappa_l} mod Phi_l. Success across the
/// list pins the exponent, which is then verified by exact equality
/// f == q^d — the test accepts exactly the monomials.
template <class K>
DynamicsResult monomial_dynamics_test(const QRat<K>& f, const std::vector<long>& primes) {
    if (f.is_zero()) throw ZeroInput();
    long bigd = std::max(f.num().degree(), f.den().degree());
    for (long ell : primes)
        if (!(2 * bigd < ell - 1)) throw PrimeTooSmall(ell);

    DynamicsResult out;
    const unsigned long p = characteristic_of(f);
    std::optional<long> exponent;
    for (long ell : primes) {
        PlacePtr<K> pl;
        CycloElem<K> r;
        try {
            pl = CycloPlace<K>::make(ell, p);
            r = reduce_mod_place(f, pl);
        } catch (const BadReduction&) {
            out.witness_prime = ell;  // f(zeta_l) undefined: not a monomial
            return out;
        }
        if (!r.pow(ell).is_one()) {
            out.witness_prime = ell;
            return out;
        }
        // f(zeta_l) is an l-th root of unity = zeta_l^kappa for some kappa
        long kappa = -1;
        CycloElem<K> p = CycloElem<K>::one();
        CycloElem<K> qc = CycloElem<K>::q_class(pl);
        for (long j = 0; j < ell; ++j) {
            if (r == p) { kappa = j; break; }
            p = p * qc;
        }
        if (kappa < 0) {
            out.witness_prime = ell;
            return out;
        }
        out.residues.emplace_back(ell, kappa);
        if (!exponent) {
            // the lemma's proof: f = q^kappa or q^{kappa - l}
            for (long cand : {kappa, kappa - ell}) {
                if (f == q_pow<K>(cand)) { exponent = cand; break; }
            }
            if (!exponent) {
                out.witness_prime = ell;
                return out;
            }
        }
    }
    if (!exponent) throw Error("monomial_dynamics_test needs a nonempty prime list");
    out.monomial = true;
    out.exponent = *exponent;
    return out;
}

inline std::vector<long> default_dynamics_primes() { return {11, 13, 17, 19, 23}; }

/// Admissible default prime list for a given degree bound: the first few
/// primes l with 2D < l - 1.
inline std::vector<long> admissible_primes(long bigd, int count = 5) {
    std::vector<long> out;
    long ell = 2;
    auto is_prime = [](long n) {
        if (n < 2) return false;
        for (long d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    };
    while (static_cast<int>(out.size()) < count) {
        if (is_prime(ell) && 2 * bigd < ell - 1) out.push_back(ell);
        ++ell;
    }
    return out;
}

}  // namespace qcurv
