// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <utility>
#include <vector>

#include "cyclotomic.hpp"
#include "matrix.hpp"
#include "tower.hpp"

namespace qcurv {

/// Linear q-difference system Y(qx) = A(x) Y(x) with A in GL_nu(k(q)(x)).
/// Everything downstream uses this orientation; the basis matrix of the
/// module operator is A^{-1}.
template <class K>
struct QDiffSystem {
    long dim;
    Matrix<XRat<K>> a;

    QDiffSystem(long d, Matrix<XRat<K>> m) : dim(d), a(std::move(m)) {
        if (a.rows() != dim || a.cols() != dim) throw DimensionMismatch();
        if (a.det().is_zero()) throw SingularMatrix("system matrix is not invertible over k(q)(x)");
    }

    static QDiffSystem scalar(const XRat<K>& f) {
        Matrix<XRat<K>> m(1, 1);
        m.at(0, 0) = f;
        return QDiffSystem(1, std::move(m));
    }
    static QDiffSystem identity(long d) { return QDiffSystem(d, Matrix<XRat<K>>::identity(d)); }
};

template <class K>
Matrix<XRat<K>> sigma_q_matrix(const Matrix<XRat<K>>& m, long k) {
    return m.map([k](const XRat<K>& f) { return sigma_q(f, k); });
}

/// Iterate A_n with Y(q^n x) = A_n(x) Y(x):
///   A_n(x) = A(q^{n-1}x) ... A(qx) A(x)          (n > 0)
///   A_0 = Id
///   A_n(x) = A(q^n x)^{-1} ... A(q^{-1}x)^{-1}   (n < 0)
template <class K>
Matrix<XRat<K>> iterate(const QDiffSystem<K>& sys, long n) {
    Matrix<XRat<K>> acc = Matrix<XRat<K>>::identity(sys.dim);
    if (n > 0) {
        for (long i = 0; i < n; ++i) acc = sigma_q_matrix(sys.a, i) * acc;
    } else if (n < 0) {
        Matrix<XRat<K>> inv = sys.a.inverse();
        for (long i = -1; i >= n; --i) acc = sigma_q_matrix(inv, i) * acc;
    }
    return acc;
}

/// [n]_q = (q^n - 1)/(q - 1) as an element of k(q); [0]_q = 0, negative n
/// through the same formula.
template <class K>
QRat<K> q_number(long n) {
    QRat<K> q = q_gen<K>();
    return (q.pow(n) - QRat<K>::one()) / (q - QRat<K>::one());
}

template <class K>
QRat<K> q_factorial(long n) {
    if (n < 0) throw IndexOutOfRange();
    QRat<K> r = QRat<K>::one();
    for (long j = 2; j <= n; ++j) r *= q_number<K>(j);
    return r;
}

template <class K>
QRat<K> q_binomial(long n, long i) {
    if (i < 0 || i > n) throw IndexOutOfRange();
    return q_factorial<K>(n) / (q_factorial<K>(i) * q_factorial<K>(n - i));
}

/// Gauge change of basis: A' = T(qx)^{-1} A(x) T(x). If Y solves the old
/// system then T^{-1} Y solves the new one.
template <class K>
QDiffSystem<K> gauge_transform(const QDiffSystem<K>& sys, const Matrix<XRat<K>>& t) {
    if (t.rows() != sys.dim || t.cols() != sys.dim) throw DimensionMismatch();
    if (t.det().is_zero()) throw SingularGauge();
    Matrix<XRat<K>> tq = sigma_q_matrix(t, 1);
    return QDiffSystem<K>(sys.dim, tq.inverse() * sys.a * t);
}

template <class K>
QDiffSystem<K> dual(const QDiffSystem<K>& sys) {
    return QDiffSystem<K>(sys.dim, sys.a.inverse().transpose());
}

template <class K>
QDiffSystem<K> tensor(const QDiffSystem<K>& s1, const QDiffSystem<K>& s2) {
    return QDiffSystem<K>(s1.dim * s2.dim, kron(s1.a, s2.a));
}

template <class K>
QDiffSystem<K> direct_sum(const QDiffSystem<K>& s1, const QDiffSystem<K>& s2) {
    return QDiffSystem<K>(s1.dim + s2.dim, block_diag(s1.a, s2.a));
}

namespace detail {

// Multi-index monomial algebra used to realize Sym^r on the basis of
// non-decreasing index words.
template <class T>
using MonoMap = std::map<std::vector<int>, T>;

inline std::vector<std::vector<int>> sym_basis(long nu, long r) {
    std::vector<std::vector<int>> basis;
    std::vector<int> word(static_cast<std::size_t>(r), 0);
    while (true) {
        basis.push_back(word);
        long i = r - 1;
        while (i >= 0 && word[static_cast<std::size_t>(i)] == nu - 1) --i;
        if (i < 0) break;
        int v = ++word[static_cast<std::size_t>(i)];
        for (long j = i + 1; j < r; ++j) word[static_cast<std::size_t>(j)] = v;
    }
    return basis;
}

}  // namespace detail

/// Symmetric power: action on the monomial basis e_I, I a non-decreasing
/// word of length r.
template <class K>
QDiffSystem<K> sym_power(const QDiffSystem<K>& sys, long r) {
    if (r < 1) throw IndexOutOfRange();
    using T = XRat<K>;
    auto basis = detail::sym_basis(sys.dim, r);
    std::map<std::vector<int>, long> pos;
    for (std::size_t i = 0; i < basis.size(); ++i) pos[basis[i]] = static_cast<long>(i);
    long n = static_cast<long>(basis.size());
    Matrix<T> m(n, n);
    for (long col = 0; col < n; ++col) {
        // expand prod_{i in I} (sum_j A_{ji} e_j)
        detail::MonoMap<T> acc;
        acc[{}] = T::one();
        for (int idx : basis[static_cast<std::size_t>(col)]) {
            detail::MonoMap<T> next;
            for (const auto& [word, coef] : acc) {
                for (long j = 0; j < sys.dim; ++j) {
                    const T& aji = sys.a.at(j, idx);
                    if (aji.is_zero()) continue;
                    std::vector<int> w = word;
                    w.push_back(static_cast<int>(j));
                    std::sort(w.begin(), w.end());
                    auto it = next.find(w);
                    if (it == next.end()) next.emplace(std::move(w), coef * aji);
                    else it->second += coef * aji;
                }
            }
            acc = std::move(next);
        }
        for (const auto& [word, coef] : acc) m.at(pos.at(word), col) = coef;
    }
    return QDiffSystem<K>(n, std::move(m));
}

/// Exterior power: entries are r x r minors; the top power is det A.
template <class K>
QDiffSystem<K> ext_power(const QDiffSystem<K>& sys, long r) {
    if (r < 1 || r > sys.dim) throw IndexOutOfRange();
    using T = XRat<K>;
    std::vector<std::vector<int>> subsets;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<long>(cur.size()) == r) { subsets.push_back(cur); return; }
        for (int i = start; i < sys.dim; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    long n = static_cast<long>(subsets.size());
    Matrix<T> m(n, n);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) {
            Matrix<T> minor(r, r);
            for (long a = 0; a < r; ++a)
                for (long b = 0; b < r; ++b)
                    minor.at(a, b) = sys.a.at(subsets[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)],
                                              subsets[static_cast<std::size_t>(j)][static_cast<std::size_t>(b)]);
            m.at(i, j) = minor.det();
        }
    return QDiffSystem<K>(n, std::move(m));
}

/// Prolongation functor: [[A, dA],[0, A]] with d = x d/dx. A solution Y
/// stacks to (dY; Y).
template <class K>
QDiffSystem<K> prolong(const QDiffSystem<K>& sys) {
    long nu = sys.dim;
    Matrix<XRat<K>> m(2 * nu, 2 * nu);
    for (long i = 0; i < nu; ++i)
        for (long j = 0; j < nu; ++j) {
            m.at(i, j) = sys.a.at(i, j);
            m.at(nu + i, nu + j) = sys.a.at(i, j);
            m.at(i, nu + j) = x_ddx(sys.a.at(i, j));
        }
    return QDiffSystem<K>(2 * nu, std::move(m));
}

/// Compatibility of Y(qx) = A Y with dY = B Y (d = x d/dx):
/// B(qx) A(x) == dA(x) + A(x) B(x).
template <class K>
bool integrability_check(const QDiffSystem<K>& sys, const Matrix<XRat<K>>& b) {
    if (b.rows() != sys.dim || b.cols() != sys.dim) throw DimensionMismatch();
    Matrix<XRat<K>> lhs = sigma_q_matrix(b, 1) * sys.a;
    Matrix<XRat<K>> da = sys.a.map([](const XRat<K>& f) { return x_ddx(f); });
    return lhs == da + sys.a * b;
}

// ---------------------------------------------------------------------------
// G-matrices: d_q^n Y = G_n Y with G_1 = (A - Id)/((q-1)x) and
// G_{n+1} = sigma_q(G_n) G_1 + d_q(G_n); G_[n] = G_n / [n]_q!.
// ---------------------------------------------------------------------------

/// The sequence G_1..G_m in canonical form. Degree growth makes this
/// practical only for small m; the pair-form engine below scales further.
template <class K>
std::vector<Matrix<XRat<K>>> g_matrices_canonical(const QDiffSystem<K>& sys, long m) {
    std::vector<Matrix<XRat<K>>> out;
    QRat<K> qm1 = q_gen<K>() - QRat<K>::one();
    XRat<K> denom = x_gen<K>() * embed_q<K>(qm1);
    Matrix<XRat<K>> g1 = (sys.a - Matrix<XRat<K>>::identity(sys.dim)).map([&denom](const XRat<K>& f) { return f / denom; });
    out.push_back(g1);
    for (long n = 1; n < m; ++n) {
        const Matrix<XRat<K>>& gn = out.back();
        Matrix<XRat<K>> dq = gn.map([](const XRat<K>& f) { return d_q(f); });
        out.push_back(sigma_q_matrix(gn, 1) * g1 + dq);
    }
    return out;
}

/// Scalar expansion d_q^n = sum_k c_{n,k} sigma_q^k with c_{n,k} in k(q)(x),
/// via c_{n+1,k} = (c_{n,k-1}(qx) - c_{n,k}(x)) / ((q-1)x). The coefficients
/// have the closed shape gamma(q) / ((q-1)x)^n with gamma a q-monomial times
/// a q-binomial, so they stay small.
template <class K>
std::vector<std::vector<XRat<K>>> dq_power_coefficients(long m) {
    std::vector<std::vector<XRat<K>>> c(static_cast<std::size_t>(m) + 1);
    c[0] = {XRat<K>::one()};
    QRat<K> qm1 = q_gen<K>() - QRat<K>::one();
    XRat<K> denom = x_gen<K>() * embed_q<K>(qm1);
    for (long n = 0; n < m; ++n) {
        const auto& prev = c[static_cast<std::size_t>(n)];
        auto& next = c[static_cast<std::size_t>(n) + 1];
        next.assign(static_cast<std::size_t>(n) + 2, XRat<K>::zero());
        for (long k = 0; k <= n + 1; ++k) {
            XRat<K> v = XRat<K>::zero();
            if (k >= 1) v += sigma_q(prev[static_cast<std::size_t>(k) - 1], 1);
            if (k <= n) v -= prev[static_cast<std::size_t>(k)];
            next[static_cast<std::size_t>(k)] = v / denom;
        }
    }
    return c;
}

/// G-matrix sequence in gcd-free pair form: G_n = num[n] / den[n] with
/// bivariate entries, n = 1..m. Built from G_n = sum_k c_{n,k} A_k so the
/// denominators grow linearly instead of doubling through d_q.
template <class K>
struct GSeq {
    long order_max;
    std::vector<Matrix<BPoly<K>>> num;  // index 0 <-> G_1
    std::vector<BPoly<K>> den;

    const Matrix<BPoly<K>>& num_of(long n) const { return num.at(static_cast<std::size_t>(n - 1)); }
    const BPoly<K>& den_of(long n) const { return den.at(static_cast<std::size_t>(n - 1)); }
};

namespace detail {

/// Matrix over a single scalar denominator.
template <class K>
struct PairMat {
    Matrix<BPoly<K>> num;
    BPoly<K> den;
};

/// Collapses the entries of a canonical matrix onto one scalar denominator,
/// multiplying together only the distinct entry denominators.
template <class K>
PairMat<K> to_pairmat(const Matrix<XRat<K>>& m) {
    long r = m.rows(), c = m.cols();
    std::vector<BiFrac<K>> parts;
    parts.reserve(static_cast<std::size_t>(r * c));
    std::vector<BPoly<K>> distinct;
    for (long i = 0; i < r; ++i)
        for (long j = 0; j < c; ++j) {
            parts.push_back(to_bifrac(m.at(i, j)));
            const BPoly<K>& d = parts.back().den;
            bool seen = false;
            for (const auto& e : distinct)
                if (e == d) { seen = true; break; }
            if (!seen) distinct.push_back(d);
        }
    BPoly<K> den = BPoly<K>::one();
    for (const auto& e : distinct) den = den * e;
    PairMat<K> out{Matrix<BPoly<K>>(r, c), den};
    std::size_t idx = 0;
    for (long i = 0; i < r; ++i)
        for (long j = 0; j < c; ++j, ++idx)
            out.num.at(i, j) = parts[idx].num * BPoly<K>::div_exact(den, parts[idx].den);
    return out;
}

}  // namespace detail

/// The expansion d_q^n = q^{-n(n-1)/2} ((q-1)x)^{-n} sum_k v_{n,k}(q) sigma_q^k
/// with polynomial scalars obeying v_{n+1,k} = v_{n,k-1} - q^n v_{n,k}.
/// (Specializes the recursion of dq_power_coefficients; tested against it.)
template <class K>
std::vector<std::vector<QPoly<K>>> dq_sigma_weights(long m) {
    std::vector<std::vector<QPoly<K>>> v(static_cast<std::size_t>(m) + 1);
    v[0] = {QPoly<K>::one()};
    for (long n = 0; n < m; ++n) {
        const auto& prev = v[static_cast<std::size_t>(n)];
        auto& next = v[static_cast<std::size_t>(n) + 1];
        next.assign(static_cast<std::size_t>(n) + 2, QPoly<K>::zero());
        QPoly<K> qn = QPoly<K>::monomial(K::one(), n);
        for (long k = 0; k <= n + 1; ++k) {
            QPoly<K> t;
            if (k >= 1) t += prev[static_cast<std::size_t>(k) - 1];
            if (k <= n) t -= qn * prev[static_cast<std::size_t>(k)];
            next[static_cast<std::size_t>(k)] = std::move(t);
        }
    }
    return v;
}

template <class K>
GSeq<K> g_matrices_pair(const QDiffSystem<K>& sys, long m) {
    long nu = sys.dim;
    auto weights = dq_sigma_weights<K>(m);
    // iterates A_0..A_m folded onto scalar denominators
    std::vector<detail::PairMat<K>> iters;
    iters.push_back({Matrix<BPoly<K>>::identity(nu), BPoly<K>::one()});
    Matrix<XRat<K>> acc = Matrix<XRat<K>>::identity(nu);
    for (long k = 1; k <= m; ++k) {
        acc = sigma_q_matrix(sys.a, k - 1) * acc;
        iters.push_back(detail::to_pairmat(acc));
    }
    // (q-1)^n x^n q^{n(n-1)/2} prod_k den(A_k), built incrementally
    GSeq<K> out;
    out.order_max = m;
    for (long n = 1; n <= m; ++n) {
        Matrix<BPoly<K>> snum(nu, nu);
        BPoly<K> sden = BPoly<K>::one();
        bool first = true;
        for (long k = 0; k <= n; ++k) {
            const QPoly<K>& w = weights[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
            if (w.is_zero()) continue;
            const auto& ak = iters[static_cast<std::size_t>(k)];
            BPoly<K> wb(w);  // constant in x
            Matrix<BPoly<K>> tnum = ak.num.map([&wb](const BPoly<K>& e) { return e * wb; });
            if (first) {
                snum = std::move(tnum);
                sden = ak.den;
                first = false;
                continue;
            }
            snum = snum.map([&ak](const BPoly<K>& e) { return e * ak.den; }) +
                   tnum.map([&sden](const BPoly<K>& e) { return e * sden; });
            sden = sden * ak.den;
        }
        // divide by q^{n(n-1)/2} ((q-1)x)^n
        QPoly<K> qm1{std::vector<K>{-K::one(), K::one()}};
        BPoly<K> extra = BPoly<K>::monomial(qm1.pow(static_cast<unsigned long>(n)) *
                                                QPoly<K>::monomial(K::one(), n * (n - 1) / 2),
                                            n);
        out.num.push_back(std::move(snum));
        out.den.push_back(sden * extra);
    }
    return out;
}

/// Min Gauss valuation over the entries of a pair-form matrix.
template <class K>
long gauss_valuation_matrix(const Matrix<BPoly<K>>& num, const BPoly<K>& den, const PlacePtr<K>& pl) {
    bool first = true;
    long m = 0;
    for (long i = 0; i < num.rows(); ++i)
        for (long j = 0; j < num.cols(); ++j) {
            if (num.at(i, j).is_zero()) continue;
            long v = gauss_valuation_pair(num.at(i, j), den, pl);
            if (first || v < m) { m = v; first = false; }
        }
    if (first) throw ZeroInput();
    return m;
}

/// Well-definedness of the iterated operators at a place: Gauss valuation of
/// G_[m] = G_m/[m]_q! is >= 0 for all m <= bound. Requires the standing
/// hypothesis gauss_valuation(G_1, v) >= 0.
struct IterativeCheck {
    bool ok = true;
    long first_failure = 0;        // 0 when ok
    std::vector<long> valuations;  // valuation of G_[m], index m-1 (0 for G_m = 0)
};

template <class K>
IterativeCheck iterative_structure_check(const QDiffSystem<K>& sys, const PlacePtr<K>& pl, long bound) {
    GSeq<K> seq = g_matrices_pair(sys, bound);
    if (!seq.num_of(1).is_zero() && gauss_valuation_matrix(seq.num_of(1), seq.den_of(1), pl) < 0)
        throw Error("iterative_structure_check: gauss_valuation(G_1) < 0, hypothesis violated");
    IterativeCheck out;
    for (long m = 1; m <= bound; ++m) {
        long val;
        if (seq.num_of(m).is_zero()) {
            val = 0;  // zero matrix is integral
        } else {
            long vfact = cyclo_valuation(q_factorial<K>(m), pl);
            val = gauss_valuation_matrix(seq.num_of(m), seq.den_of(m), pl) - vfact;
        }
        out.valuations.push_back(val);
        if (val < 0 && out.ok) {
            out.ok = false;
            out.first_failure = m;
        }
    }
    return out;
}

}  // namespace qcurv
