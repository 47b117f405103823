// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace qcurv {

/// Dense matrix over an exact coefficient field (or field-like ring whose
/// division throws when an inverse does not exist).
template <class T>
class Matrix {
public:
    Matrix() : r_(0), c_(0) {}
    Matrix(long rows, long cols) : r_(rows), c_(cols), d_(static_cast<std::size_t>(rows * cols), T::zero()) {}

    static Matrix identity(long n) {
        Matrix m(n, n);
        for (long i = 0; i < n; ++i) m.at(i, i) = T::one();
        return m;
    }

    long rows() const { return r_; }
    long cols() const { return c_; }

    T& at(long i, long j) { return d_[static_cast<std::size_t>(i * c_ + j)]; }
    const T& at(long i, long j) const { return d_[static_cast<std::size_t>(i * c_ + j)]; }

    bool is_identity() const {
        if (r_ != c_) return false;
        for (long i = 0; i < r_; ++i)
            for (long j = 0; j < c_; ++j) {
                if (i == j ? !at(i, j).is_one() : !at(i, j).is_zero()) return false;
            }
        return true;
    }
    bool is_zero() const {
        for (const auto& v : d_)
            if (!v.is_zero()) return false;
        return true;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        check_same(a, b);
        Matrix r = a;
        for (std::size_t i = 0; i < r.d_.size(); ++i) r.d_[i] += b.d_[i];
        return r;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        check_same(a, b);
        Matrix r = a;
        for (std::size_t i = 0; i < r.d_.size(); ++i) r.d_[i] -= b.d_[i];
        return r;
    }
    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.c_ != b.r_) throw DimensionMismatch();
        Matrix r(a.r_, b.c_);
        for (long i = 0; i < a.r_; ++i)
            for (long k = 0; k < a.c_; ++k) {
                if (a.at(i, k).is_zero()) continue;
                for (long j = 0; j < b.c_; ++j) {
                    if (b.at(k, j).is_zero()) continue;
                    r.at(i, j) += a.at(i, k) * b.at(k, j);
                }
            }
        return r;
    }
    Matrix scaled(const T& c) const {
        Matrix r = *this;
        for (auto& v : r.d_) v = v * c;
        return r;
    }
    Matrix operator-() const {
        Matrix r = *this;
        for (auto& v : r.d_) v = -v;
        return r;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.r_ == b.r_ && a.c_ == b.c_ && a.d_ == b.d_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    Matrix transpose() const {
        Matrix r(c_, r_);
        for (long i = 0; i < r_; ++i)
            for (long j = 0; j < c_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    template <class F>
    auto map(F&& f) const -> Matrix<std::decay_t<decltype(f(std::declval<const T&>()))>> {
        Matrix<std::decay_t<decltype(f(std::declval<const T&>()))>> r(r_, c_);
        for (long i = 0; i < r_; ++i)
            for (long j = 0; j < c_; ++j) r.at(i, j) = f(at(i, j));
        return r;
    }

    T det() const {
        if (r_ != c_) throw DimensionMismatch();
        Matrix m = *this;
        T result = T::one();
        bool neg = false;
        for (long col = 0; col < c_; ++col) {
            long pivot = -1;
            for (long i = col; i < r_; ++i)
                if (!m.at(i, col).is_zero()) { pivot = i; break; }
            if (pivot < 0) return T::zero();
            if (pivot != col) { m.swap_rows(pivot, col); neg = !neg; }
            result = result * m.at(col, col);
            T inv = m.at(col, col).inverse();
            for (long i = col + 1; i < r_; ++i) {
                if (m.at(i, col).is_zero()) continue;
                T f = m.at(i, col) * inv;
                for (long j = col; j < c_; ++j) m.at(i, j) -= f * m.at(col, j);
            }
        }
        return neg ? -result : result;
    }

    Matrix inverse() const {
        if (r_ != c_) throw DimensionMismatch();
        Matrix m = *this;
        Matrix inv = identity(r_);
        for (long col = 0; col < c_; ++col) {
            long pivot = -1;
            for (long i = col; i < r_; ++i)
                if (!m.at(i, col).is_zero()) { pivot = i; break; }
            if (pivot < 0) throw SingularMatrix();
            if (pivot != col) { m.swap_rows(pivot, col); inv.swap_rows(pivot, col); }
            T f = m.at(col, col).inverse();
            for (long j = 0; j < c_; ++j) { m.at(col, j) = m.at(col, j) * f; inv.at(col, j) = inv.at(col, j) * f; }
            for (long i = 0; i < r_; ++i) {
                if (i == col || m.at(i, col).is_zero()) continue;
                T g = m.at(i, col);
                for (long j = 0; j < c_; ++j) {
                    m.at(i, j) -= g * m.at(col, j);
                    inv.at(i, j) -= g * inv.at(col, j);
                }
            }
        }
        return inv;
    }

    /// Solves M*X = B; throws SingularMatrix when rank-deficient.
    Matrix solve(const Matrix& b) const { return inverse() * b; }

    friend Matrix kron(const Matrix& a, const Matrix& b) {
        Matrix r(a.r_ * b.r_, a.c_ * b.c_);
        for (long i = 0; i < a.r_; ++i)
            for (long j = 0; j < a.c_; ++j) {
                if (a.at(i, j).is_zero()) continue;
                for (long k = 0; k < b.r_; ++k)
                    for (long l = 0; l < b.c_; ++l)
                        r.at(i * b.r_ + k, j * b.c_ + l) = a.at(i, j) * b.at(k, l);
            }
        return r;
    }

    friend Matrix block_diag(const Matrix& a, const Matrix& b) {
        Matrix r(a.r_ + b.r_, a.c_ + b.c_);
        for (long i = 0; i < a.r_; ++i)
            for (long j = 0; j < a.c_; ++j) r.at(i, j) = a.at(i, j);
        for (long i = 0; i < b.r_; ++i)
            for (long j = 0; j < b.c_; ++j) r.at(a.r_ + i, a.c_ + j) = b.at(i, j);
        return r;
    }

    /// Kernel basis as columns; elements over the field T.
    Matrix kernel_basis() const {
        Matrix m = *this;
        long n = c_;
        std::vector<long> pivot_col;
        long row = 0;
        for (long col = 0; col < n && row < r_; ++col) {
            long pivot = -1;
            for (long i = row; i < r_; ++i)
                if (!m.at(i, col).is_zero()) { pivot = i; break; }
            if (pivot < 0) continue;
            if (pivot != row) m.swap_rows(pivot, row);
            T f = m.at(row, col).inverse();
            for (long j = 0; j < n; ++j) m.at(row, j) = m.at(row, j) * f;
            for (long i = 0; i < r_; ++i) {
                if (i == row || m.at(i, col).is_zero()) continue;
                T g = m.at(i, col);
                for (long j = 0; j < n; ++j) m.at(i, j) -= g * m.at(row, j);
            }
            pivot_col.push_back(col);
            ++row;
        }
        std::vector<long> free_cols;
        for (long col = 0, pi = 0; col < n; ++col) {
            if (pi < static_cast<long>(pivot_col.size()) && pivot_col[static_cast<std::size_t>(pi)] == col) { ++pi; continue; }
            free_cols.push_back(col);
        }
        Matrix basis(n, static_cast<long>(free_cols.size()));
        for (std::size_t k = 0; k < free_cols.size(); ++k) {
            long fc = free_cols[k];
            basis.at(fc, static_cast<long>(k)) = T::one();
            for (std::size_t r = 0; r < pivot_col.size(); ++r)
                basis.at(pivot_col[r], static_cast<long>(k)) = -m.at(static_cast<long>(r), fc);
        }
        return basis;
    }

private:
    long r_, c_;
    std::vector<T> d_;

    void swap_rows(long i, long j) {
        for (long k = 0; k < c_; ++k) std::swap(at(i, k), at(j, k));
    }
    static void check_same(const Matrix& a, const Matrix& b) {
        if (a.r_ != b.r_ || a.c_ != b.c_) throw DimensionMismatch();
    }
};

}  // namespace qcurv
