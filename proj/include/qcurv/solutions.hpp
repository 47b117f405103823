// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dynamics.hpp"
#include "qdiff.hpp"

namespace qcurv {

/// nu x nu truncated power series in x over k(q): coefficient matrices
/// Y_0..Y_order. The constant term is coeff[0].
template <class K>
struct TruncatedSeriesMatrix {
    long dim = 0;
    long order = 0;
    std::vector<Matrix<QRat<K>>> coeff;

    const Matrix<QRat<K>>& at(long n) const { return coeff.at(static_cast<std::size_t>(n)); }
    const Matrix<QRat<K>>& constant_term() const { return coeff.front(); }

    /// Termwise x d/dx: coefficient n scales by n.
    TruncatedSeriesMatrix x_ddx() const {
        TruncatedSeriesMatrix r = *this;
        for (long n = 0; n <= order; ++n)
            r.coeff[static_cast<std::size_t>(n)] =
                r.coeff[static_cast<std::size_t>(n)].scaled(QRat<K>::from_int(n));
        return r;
    }

    /// Stacks (x d/dx Y ; Y), the prolongation of a solution.
    TruncatedSeriesMatrix stack_prolonged() const {
        TruncatedSeriesMatrix r;
        r.dim = 2 * dim;
        r.order = order;
        TruncatedSeriesMatrix d = x_ddx();
        for (long n = 0; n <= order; ++n) {
            Matrix<QRat<K>> m(2 * dim, dim);
            for (long i = 0; i < dim; ++i)
                for (long j = 0; j < dim; ++j) {
                    m.at(i, j) = d.coeff[static_cast<std::size_t>(n)].at(i, j);
                    m.at(dim + i, j) = coeff[static_cast<std::size_t>(n)].at(i, j);
                }
            r.coeff.push_back(std::move(m));
        }
        return r;
    }
};

/// Power-series expansion of a rational function at x = 0 up to order N;
/// PoleAtZero when the denominator vanishes at 0.
template <class K>
std::vector<QRat<K>> xrat_series(const XRat<K>& f, long order) {
    const auto& den = f.den();
    QRat<K> d0 = den.coeff(0);
    if (d0.is_zero()) throw PoleAtZero();
    QRat<K> inv0 = d0.inverse();
    std::vector<QRat<K>> out(static_cast<std::size_t>(order) + 1, QRat<K>::zero());
    // series of 1/den by the standard recursion, then multiply by num
    std::vector<QRat<K>> invden(static_cast<std::size_t>(order) + 1, QRat<K>::zero());
    invden[0] = inv0;
    for (long n = 1; n <= order; ++n) {
        QRat<K> acc = QRat<K>::zero();
        for (long k = 1; k <= std::min<long>(n, den.degree()); ++k)
            acc += den.coeff(k) * invden[static_cast<std::size_t>(n - k)];
        invden[static_cast<std::size_t>(n)] = -inv0 * acc;
    }
    const auto& num = f.num();
    for (long n = 0; n <= order; ++n) {
        QRat<K> acc = QRat<K>::zero();
        for (long k = 0; k <= std::min<long>(n, num.degree()); ++k)
            acc += num.coeff(k) * invden[static_cast<std::size_t>(n - k)];
        out[static_cast<std::size_t>(n)] = acc;
    }
    return out;
}

template <class K>
std::vector<Matrix<QRat<K>>> matrix_series(const Matrix<XRat<K>>& a, long order) {
    long r = a.rows(), c = a.cols();
    std::vector<Matrix<QRat<K>>> out(static_cast<std::size_t>(order) + 1, Matrix<QRat<K>>(r, c));
    for (long i = 0; i < r; ++i)
        for (long j = 0; j < c; ++j) {
            auto s = xrat_series(a.at(i, j), order);
            for (long n = 0; n <= order; ++n) out[static_cast<std::size_t>(n)].at(i, j) = s[static_cast<std::size_t>(n)];
        }
    return out;
}

template <class K>
Matrix<QRat<K>> constant_term(const Matrix<XRat<K>>& a) {
    return a.map([](const XRat<K>& f) {
        QRat<K> d0 = f.den().coeff(0);
        if (d0.is_zero()) throw PoleAtZero();
        return f.num().coeff(0) / d0;
    });
}

/// Formal fundamental solution by the coefficient recursion
/// (q^n Id - A(0)) Y_n = sum_{k=1..n} A_k Y_{n-k}.
/// Preconditions: A regular at 0 and det(q^n Id - A(0)) != 0 for n <= N.
/// Y_0 = Id when A(0) = Id; otherwise Y_0 spans ker(A(0) - Id) padded by
/// zero columns (the solutions of the constant equation at order zero).
template <class K>
TruncatedSeriesMatrix<K> series_solution(const QDiffSystem<K>& sys, long order) {
    auto a = matrix_series(sys.a, order);
    const Matrix<QRat<K>>& a0 = a[0];
    long nu = sys.dim;
    Matrix<QRat<K>> id = Matrix<QRat<K>>::identity(nu);

    TruncatedSeriesMatrix<K> y;
    y.dim = nu;
    y.order = order;
    if (a0 == id) {
        y.coeff.push_back(id);
    } else {
        Matrix<QRat<K>> ker = (a0 - id).kernel_basis();
        Matrix<QRat<K>> y0(nu, nu);
        for (long j = 0; j < ker.cols() && j < nu; ++j)
            for (long i = 0; i < nu; ++i) y0.at(i, j) = ker.at(i, j);
        y.coeff.push_back(std::move(y0));
    }
    QRat<K> q = q_gen<K>();
    for (long n = 1; n <= order; ++n) {
        Matrix<QRat<K>> rhs(nu, nu);
        for (long k = 1; k <= n; ++k)
            rhs = rhs + a[static_cast<std::size_t>(k)] * y.coeff[static_cast<std::size_t>(n - k)];
        Matrix<QRat<K>> lhs = id.scaled(q.pow(n)) - a0;
        try {
            y.coeff.push_back(lhs.inverse() * rhs);
        } catch (const SingularMatrix&) {
            throw Resonant("q^" + std::to_string(n) + " is an eigenvalue of A(0)");
        }
    }
    return y;
}

/// First order at which Y(qx) - A(x) Y(x) is nonzero, or -1 when the
/// residual vanishes identically through the computed order.
template <class K>
long residual_first_nonzero(const QDiffSystem<K>& sys, const TruncatedSeriesMatrix<K>& y) {
    auto a = matrix_series(sys.a, y.order);
    QRat<K> q = q_gen<K>();
    for (long n = 0; n <= y.order; ++n) {
        Matrix<QRat<K>> lhs = y.coeff[static_cast<std::size_t>(n)].scaled(q.pow(n));
        Matrix<QRat<K>> rhs(y.coeff[0].rows(), y.coeff[0].cols());
        for (long k = 0; k <= n; ++k)
            rhs = rhs + a[static_cast<std::size_t>(k)] * y.coeff[static_cast<std::size_t>(n - k)];
        if (!(lhs == rhs)) return n;
    }
    return -1;
}

/// Entrywise rational reconstruction: den degree <= D, num degree <= D,
/// matching the series through its full order (needs order >= 2D+1).
/// Returns nothing when some entry admits no such representation.
template <class K>
std::optional<XRat<K>> reconstruct_entry(const std::vector<QRat<K>>& s, long bound) {
    long order = static_cast<long>(s.size()) - 1;
    if (order < 2 * bound + 1) throw IndexOutOfRange();
    // unknowns b_0..b_D; conditions: coefficient of x^m in S*b vanishes for
    // m = D+1 .. 2D+1 (a square-ish system; any kernel vector works)
    long rows = order - bound;
    Matrix<QRat<K>> m(rows, bound + 1);
    for (long r = 0; r < rows; ++r) {
        long target = bound + 1 + r;
        for (long j = 0; j <= bound; ++j) {
            long idx = target - j;
            m.at(r, j) = (idx >= 0 && idx <= order) ? s[static_cast<std::size_t>(idx)] : QRat<K>::zero();
        }
    }
    Matrix<QRat<K>> ker = m.kernel_basis();
    if (ker.cols() == 0) return std::nullopt;
    std::vector<QRat<K>> bc(static_cast<std::size_t>(bound) + 1);
    for (long j = 0; j <= bound; ++j) bc[static_cast<std::size_t>(j)] = ker.at(j, 0);
    XPoly<K> den(std::move(bc));
    if (den.is_zero()) return std::nullopt;
    // num = S * den truncated at degree D; then verify the full order
    std::vector<QRat<K>> nc(static_cast<std::size_t>(bound) + 1, QRat<K>::zero());
    for (long n = 0; n <= bound; ++n)
        for (long k = 0; k <= std::min<long>(n, den.degree()); ++k)
            nc[static_cast<std::size_t>(n)] += den.coeff(k) * s[static_cast<std::size_t>(n - k)];
    XPoly<K> num(std::move(nc));
    if (den.coeff(0).is_zero()) return std::nullopt;
    XRat<K> cand(num, den);
    auto expanded = xrat_series(cand, order);
    for (long n = 0; n <= order; ++n)
        if (!(expanded[static_cast<std::size_t>(n)] == s[static_cast<std::size_t>(n)])) return std::nullopt;
    return cand;
}

/// Matrix rational reconstruction verified against the functional equation:
/// the candidate is returned only after the exact checks Y(qx) = A(x) Y(x)
/// and det Y != 0 both pass.
template <class K>
std::optional<Matrix<XRat<K>>> pade_reconstruct(const QDiffSystem<K>& sys,
                                                const TruncatedSeriesMatrix<K>& y, long bound) {
    long nu = y.dim;
    Matrix<XRat<K>> cand(nu, nu);
    for (long i = 0; i < nu; ++i)
        for (long j = 0; j < nu; ++j) {
            std::vector<QRat<K>> s;
            s.reserve(static_cast<std::size_t>(y.order) + 1);
            for (long n = 0; n <= y.order; ++n) s.push_back(y.at(n).at(i, j));
            auto e = reconstruct_entry<K>(s, bound);
            if (!e) return std::nullopt;
            cand.at(i, j) = *e;
        }
    if (cand.det().is_zero()) return std::nullopt;
    Matrix<XRat<K>> lhs = sigma_q_matrix(cand, 1);
    if (!(lhs == sys.a * cand)) return std::nullopt;
    return cand;
}

// ---------------------------------------------------------------------------
// Shearing normalization
// ---------------------------------------------------------------------------

template <class K>
long ord_at_zero(const XRat<K>& f) {
    if (f.is_zero()) throw ZeroInput();
    return f.num().trailing_order() - f.den().trailing_order();
}

template <class K>
struct ShearResult {
    Matrix<XRat<K>> gauge;  // T with sys' = gauge(sys, T)
    QDiffSystem<K> sys;
};

/// Diagonal x-power gauge composed with constant gauges bringing A to
/// "regular with invertible constant term", when reachable.
/// ord_0(det A) is invariant under this gauge class (shears and constants
/// change det A by k(q)^* units), so a nonzero order is a proof of
/// unreachability: NotRegularSingularAtZero. Hitting the iteration bound
/// (dim * max entry degree, at least 6) raises Unresolved instead.
template <class K>
ShearResult<K> shear_normalize(const QDiffSystem<K>& sys) {
    long nu = sys.dim;
    long det_ord = ord_at_zero(sys.a.det());
    if (det_ord != 0) throw NotRegularSingularAtZero();

    long maxdeg = 1;
    for (long i = 0; i < nu; ++i)
        for (long j = 0; j < nu; ++j) {
            const auto& e = sys.a.at(i, j);
            if (e.is_zero()) continue;
            maxdeg = std::max({maxdeg, e.num().degree(), e.den().degree()});
        }
    long bound = std::max<long>(6, nu * maxdeg);

    Matrix<XRat<K>> total = Matrix<XRat<K>>::identity(nu);
    QDiffSystem<K> cur = sys;
    for (long step = 0; step < bound; ++step) {
        bool pole = false;
        for (long i = 0; i < nu; ++i)
            for (long j = 0; j < nu; ++j)
                if (!cur.a.at(i, j).is_zero() && ord_at_zero(cur.a.at(i, j)) < 0) pole = true;
        if (!pole) {
            // no pole and ord_0(det) = 0 force det A(0) != 0
            Matrix<QRat<K>> a0 = constant_term(cur.a);
            if (a0.det().is_zero()) throw Unresolved("entry orders balanced but A(0) singular");
            return {total, cur};
        }
        // poles: balance entry orders with diagonal x-powers; feasibility is
        // the potential system d_i - d_j <= ord(A_ij), solved Bellman-Ford
        // style on edges j -> i
        std::vector<long> dist(static_cast<std::size_t>(nu), 0);
        bool changed = true;
        long rounds = 0;
        while (changed && rounds <= nu + 1) {
            changed = false;
            ++rounds;
            for (long i = 0; i < nu; ++i)
                for (long j = 0; j < nu; ++j) {
                    if (cur.a.at(i, j).is_zero()) continue;
                    long w = ord_at_zero(cur.a.at(i, j));
                    if (dist[static_cast<std::size_t>(j)] + w < dist[static_cast<std::size_t>(i)]) {
                        dist[static_cast<std::size_t>(i)] = dist[static_cast<std::size_t>(j)] + w;
                        changed = true;
                    }
                }
        }
        if (changed) throw Unresolved("valuation balancing found a negative cycle");
        long mn = *std::min_element(dist.begin(), dist.end());
        Matrix<XRat<K>> t(nu, nu);
        for (long i = 0; i < nu; ++i)
            t.at(i, i) = x_pow<K>(dist[static_cast<std::size_t>(i)] - mn);
        cur = gauge_transform(cur, t);
        total = total * t;
    }
    throw Unresolved("shearing iteration bound exceeded");
}

// ---------------------------------------------------------------------------
// Exponents at zero
// ---------------------------------------------------------------------------

template <class K>
using TPoly = UPoly<QRat<K>, 't'>;

template <class K>
TPoly<K> char_poly(const Matrix<QRat<K>>& a) {
    using TR = RatFn<QRat<K>, 't'>;
    long nu = a.rows();
    Matrix<TR> m(nu, nu);
    TR t = TR::gen();
    for (long i = 0; i < nu; ++i)
        for (long j = 0; j < nu; ++j) {
            TR e = TR(TPoly<K>(-a.at(i, j)));
            if (i == j) e += t;
            m.at(i, j) = e;
        }
    TR d = m.det();
    if (!d.den().is_one()) throw Error("char_poly: nonpolynomial determinant");
    return d.num();
}

namespace detail {

inline bool coeff_sqrt(const Rational& c, Rational& out) { return c.try_sqrt(out); }
inline bool coeff_sqrt(const GFp&, GFp&) { return false; }  // not attempted in char p

/// Exact square root of a polynomial over the base field, when it exists.
template <class K>
bool poly_sqrt(const UPoly<K, 'q'>& p, UPoly<K, 'q'>& out) {
    if (p.is_zero()) { out = UPoly<K, 'q'>::zero(); return true; }
    long d = p.degree();
    if (d % 2) return false;
    K lead_root;
    if (!coeff_sqrt(p.lead(), lead_root)) return false;
    long h = d / 2;
    std::vector<K> s(static_cast<std::size_t>(h) + 1, K::zero());
    s[static_cast<std::size_t>(h)] = lead_root;
    // match coefficients downward: p_k = sum_{i+j=k} s_i s_j
    for (long k = d - 1; k >= h; --k) {
        long i = k - h;  // solve for s_i against s_h
        K acc = K::zero();
        for (long a = i + 1; a <= h; ++a) {
            long b = k - a;
            if (b < 0 || b > h || b <= i) continue;
            acc = acc + s[static_cast<std::size_t>(a)] * s[static_cast<std::size_t>(b)];
        }
        K num = p.coeff(k) - acc;
        s[static_cast<std::size_t>(i)] = num / (lead_root + lead_root);
    }
    UPoly<K, 'q'> cand{std::vector<K>(s)};
    if (cand * cand == p) { out = cand; return true; }
    return false;
}

template <class K>
bool qrat_sqrt(const QRat<K>& c, QRat<K>& out) {
    UPoly<K, 'q'> sn, sd;
    if (!poly_sqrt(c.num(), sn)) return false;
    if (!poly_sqrt(c.den(), sd)) return false;
    out = QRat<K>(sn, sd);
    return out * out == c;
}

}  // namespace detail

/// Eigenvalues in k(q) of a constant matrix, found exactly for triangular
/// matrices (read-off) and degree-2 characteristic factors (discriminant
/// square root). Returns the found roots (with multiplicity) and the
/// unsplit remainder factor.
template <class K>
struct EigenSplit {
    std::vector<QRat<K>> roots;
    TPoly<K> unresolved;  // 1 when fully split
};

template <class K>
EigenSplit<K> eigenvalues_in_kq(const Matrix<QRat<K>>& a) {
    long nu = a.rows();
    EigenSplit<K> out;
    out.unresolved = TPoly<K>::one();
    bool upper = true, lower = true;
    for (long i = 0; i < nu; ++i)
        for (long j = 0; j < nu; ++j) {
            if (i > j && !a.at(i, j).is_zero()) upper = false;
            if (i < j && !a.at(i, j).is_zero()) lower = false;
        }
    if (upper || lower) {
        for (long i = 0; i < nu; ++i) out.roots.push_back(a.at(i, i));
        return out;
    }
    TPoly<K> p = char_poly(a);
    // strip linear factors exposed by rational-root structure: try the
    // diagonal entries as candidates first
    for (long i = 0; i < nu && p.degree() > 0; ++i) {
        QRat<K> cand = a.at(i, i);
        while (p.degree() > 0 && p.eval_k(cand).is_zero()) {
            TPoly<K> lin{std::vector<QRat<K>>{-cand, QRat<K>::one()}};
            p = TPoly<K>::div_exact(p, lin);
            out.roots.push_back(cand);
        }
    }
    if (p.degree() == 1) {
        out.roots.push_back(-p.coeff(0) / p.coeff(1));
        return out;
    }
    if (p.degree() == 2) {
        QRat<K> a2 = p.coeff(2), b = p.coeff(1), c = p.coeff(0);
        QRat<K> disc = b * b - QRat<K>::from_int(4) * a2 * c;
        QRat<K> root;
        if (detail::qrat_sqrt(disc, root)) {
            QRat<K> two_a = a2 + a2;
            out.roots.push_back((-b + root) / two_a);
            out.roots.push_back((-b - root) / two_a);
            return out;
        }
    }
    out.unresolved = p;
    return out;
}

enum class ExponentClass { QPower, NotQPower, Unresolved };

template <class K>
struct ExponentData {
    TPoly<K> char_polynomial;
    std::vector<std::pair<QRat<K>, ExponentClass>> exponents;  // found roots
    std::vector<long> q_exponents;                             // d for QPower roots, aligned
    TPoly<K> unresolved_factor;                                // 1 when fully split
};

/// Exponents at zero: eigenvalues of A(0) after shearing normalization,
/// classified by q^Z membership through the dynamics test.
template <class K>
ExponentData<K> exponents_at_zero(const QDiffSystem<K>& sys) {
    auto sheared = shear_normalize(sys);
    Matrix<QRat<K>> a0 = constant_term(sheared.sys.a);
    ExponentData<K> out;
    out.char_polynomial = char_poly(a0);
    auto split = eigenvalues_in_kq(a0);
    out.unresolved_factor = split.unresolved;
    for (const auto& root : split.roots) {
        long bigd = std::max(root.num().degree(), root.den().degree());
        auto dyn = monomial_dynamics_test(root, admissible_primes(bigd));
        if (dyn.monomial) {
            out.exponents.emplace_back(root, ExponentClass::QPower);
            out.q_exponents.push_back(dyn.exponent);
        } else {
            out.exponents.emplace_back(root, ExponentClass::NotQPower);
            out.q_exponents.push_back(0);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Frobenius gauge to constant coefficients
// ---------------------------------------------------------------------------

template <class K>
struct GaugeToConstant {
    TruncatedSeriesMatrix<K> f;  // F(0) = Id
    Matrix<QRat<K>> a0;
};

/// Resonance pre-check on the detectable eigenvalues of A(0): a ratio in
/// q^Z \ {1} is fatal for the order-by-order solve.
template <class K>
void check_resonance(const Matrix<QRat<K>>& a0) {
    auto split = eigenvalues_in_kq(a0);
    for (std::size_t i = 0; i < split.roots.size(); ++i)
        for (std::size_t j = 0; j < split.roots.size(); ++j) {
            if (i == j) continue;
            const QRat<K>& x = split.roots[i];
            const QRat<K>& y = split.roots[j];
            if (x.is_zero() || y.is_zero()) throw SingularMatrix("A(0) has eigenvalue 0");
            auto d = exact_q_power(x / y);
            if (d && *d != 0)
                throw Resonant("(" + x.str() + ", " + y.str() + ")");
        }
}

/// Solves F(x)^{-1} A(x) F(qx) = A_0 := A(0) order by order with F(0) = Id:
/// at order n the Sylvester equation q^n A_0 F_n - F_n A_0 = -sum_{k>=1}
/// A_k F_{n-k} q^{n-k}.
template <class K>
GaugeToConstant<K> gauge_to_constant(const QDiffSystem<K>& sys, long order) {
    auto a = matrix_series(sys.a, order);
    Matrix<QRat<K>> a0 = a[0];
    long nu = sys.dim;
    if (a0.det().is_zero()) throw SingularMatrix("A(0) singular; shear first");
    check_resonance(a0);

    TruncatedSeriesMatrix<K> f;
    f.dim = nu;
    f.order = order;
    f.coeff.push_back(Matrix<QRat<K>>::identity(nu));
    QRat<K> q = q_gen<K>();
    for (long n = 1; n <= order; ++n) {
        Matrix<QRat<K>> rhs(nu, nu);
        for (long k = 1; k <= n; ++k)
            rhs = rhs - a[static_cast<std::size_t>(k)] * f.coeff[static_cast<std::size_t>(n - k)].scaled(q.pow(n - k));
        // Sylvester solve via Kronecker linearization, row-major vec
        Matrix<QRat<K>> p = a0.scaled(q.pow(n));
        Matrix<QRat<K>> lhs = kron(p, Matrix<QRat<K>>::identity(nu)) -
                              kron(Matrix<QRat<K>>::identity(nu), a0.transpose());
        Matrix<QRat<K>> vec(nu * nu, 1);
        for (long i = 0; i < nu; ++i)
            for (long j = 0; j < nu; ++j) vec.at(i * nu + j, 0) = rhs.at(i, j);
        Matrix<QRat<K>> sol;
        try {
            sol = lhs.solve(vec);
        } catch (const SingularMatrix&) {
            throw Resonant("undetected eigenvalue ratio q^" + std::to_string(n));
        }
        Matrix<QRat<K>> fn(nu, nu);
        for (long i = 0; i < nu; ++i)
            for (long j = 0; j < nu; ++j) fn.at(i, j) = sol.at(i * nu + j, 0);
        f.coeff.push_back(std::move(fn));
    }
    return {std::move(f), std::move(a0)};
}

// ---------------------------------------------------------------------------
// Frobenius step: normalize to A(0) = Id (used by triviality certification)
// ---------------------------------------------------------------------------

template <class K>
struct NormalizedSystem {
    Matrix<XRat<K>> gauge;  // T with sys' = gauge(sys, T), A'(0) = Id
    QDiffSystem<K> sys;
};

/// Shearing plus the constant eigen-step: reaches A(0) = Id for systems
/// whose exponents are detectable powers of q with a k(q)-eigenbasis.
/// Throws Unresolved when the eigen machinery cannot see far enough.
template <class K>
NormalizedSystem<K> normalize_to_identity(const QDiffSystem<K>& sys) {
    auto sheared = shear_normalize(sys);
    Matrix<XRat<K>> total = sheared.gauge;
    QDiffSystem<K> cur = sheared.sys;
    long nu = sys.dim;
    for (int pass = 0; pass < 4; ++pass) {
        Matrix<QRat<K>> a0 = constant_term(cur.a);
        if (a0 == Matrix<QRat<K>>::identity(nu)) return {total, cur};
        auto split = eigenvalues_in_kq(a0);
        if (split.unresolved.degree() > 0)
            throw Unresolved("eigenvalues of A(0) not expressible in k(q)");
        std::vector<long> dexp;
        for (const auto& root : split.roots) {
            if (root.is_zero()) throw SingularMatrix("A(0) has eigenvalue 0");
            auto d = exact_q_power(root);
            if (!d) throw Unresolved("exponent " + root.str() + " is not in q^Z");
            dexp.push_back(*d);
        }
        // eigenbasis over k(q); fails (Unresolved) when A(0) is not semisimple
        std::vector<std::vector<QRat<K>>> cols;
        std::vector<long> colexp;
        std::vector<QRat<K>> seen;
        for (std::size_t r = 0; r < split.roots.size(); ++r) {
            bool dup = false;
            for (const auto& s : seen)
                if (s == split.roots[r]) dup = true;
            if (dup) continue;
            seen.push_back(split.roots[r]);
            Matrix<QRat<K>> shifted = a0;
            for (long i = 0; i < nu; ++i) shifted.at(i, i) -= split.roots[r];
            Matrix<QRat<K>> ker = shifted.kernel_basis();
            for (long j = 0; j < ker.cols(); ++j) {
                std::vector<QRat<K>> col(static_cast<std::size_t>(nu));
                for (long i = 0; i < nu; ++i) col[static_cast<std::size_t>(i)] = ker.at(i, j);
                cols.push_back(std::move(col));
                colexp.push_back(dexp[r]);
            }
        }
        if (static_cast<long>(cols.size()) != nu)
            throw Unresolved("A(0) is not semisimple over k(q)");
        Matrix<XRat<K>> t(nu, nu);
        for (long j = 0; j < nu; ++j)
            for (long i = 0; i < nu; ++i) {
                XRat<K> v = embed_q<K>(cols[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]);
                t.at(i, j) = v * x_pow<K>(colexp[static_cast<std::size_t>(j)]);
            }
        cur = gauge_transform(cur, t);
        total = total * t;
        // the shear may have reintroduced poles at 0
        auto again = shear_normalize(cur);
        cur = again.sys;
        total = total * again.gauge;
    }
    throw Unresolved("Frobenius eigen-step did not reach A(0) = Id");
}

}  // namespace qcurv
