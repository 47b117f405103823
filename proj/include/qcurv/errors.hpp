// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace qcurv {

/// Base class for all domain errors raised by the library.
/// The CLI maps these to exit code 1 (input / data errors); anything
/// else escaping to main is an internal invariant violation (exit 2).
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DivisionByZero : Error {
    DivisionByZero() : Error("division by zero") {}
    explicit DivisionByZero(const std::string& w) : Error(w) {}
};

struct MixedCharacteristic : Error {
    MixedCharacteristic() : Error("mixing elements of different characteristic") {}
};

struct ZeroInput : Error {
    ZeroInput() : Error("zero input where a nonzero value is required") {}
};

struct OrderDivisibleByChar : Error {
    long order;
    explicit OrderDivisibleByChar(long n)
        : Error("cyclotomic order " + std::to_string(n) + " divisible by the characteristic"), order(n) {}
};

/// The place must be excluded from scans: a denominator (or, in char p,
/// a needed inverse) shares a factor with Phi_n.
struct BadReduction : Error {
    long order;
    explicit BadReduction(long n)
        : Error("bad reduction at the cyclotomic place of order " + std::to_string(n)), order(n) {}
};

struct DimensionMismatch : Error {
    DimensionMismatch() : Error("matrix dimension mismatch") {}
    explicit DimensionMismatch(const std::string& w) : Error(w) {}
};

struct SingularMatrix : Error {
    SingularMatrix() : Error("singular matrix") {}
    explicit SingularMatrix(const std::string& w) : Error(w) {}
};

struct SingularGauge : Error {
    SingularGauge() : Error("gauge matrix is singular") {}
};

struct IndexOutOfRange : Error {
    IndexOutOfRange() : Error("index out of range") {}
};

struct PrimeTooSmall : Error {
    long prime;
    explicit PrimeTooSmall(long ell)
        : Error("prime " + std::to_string(ell) + " violates the degree condition 2D < l-1"), prime(ell) {}
};

struct NotConstant : Error {
    NotConstant() : Error("system matrix involves x; a constant matrix is required") {}
};

struct UnsupportedShape : Error {
    explicit UnsupportedShape(const std::string& w) : Error(w) {}
};

struct PoleAtZero : Error {
    PoleAtZero() : Error("system matrix has a pole at x = 0") {}
};

struct Resonant : Error {
    std::string pair;
    explicit Resonant(const std::string& p) : Error("resonant exponents: " + p), pair(p) {}
};

struct NotRegularSingularAtZero : Error {
    NotRegularSingularAtZero()
        : Error("not regular singular at 0: ord_0(det A) != 0, unreachable by shearing") {}
};

/// Shearing/eigenvalue machinery hit its iteration bound or an
/// undetectable eigenvalue; honest third verdict, not a classification.
struct Unresolved : Error {
    explicit Unresolved(const std::string& w) : Error("unresolved: " + w) {}
};

struct NoConfluence : Error {
    NoConfluence() : Error("A(x)|_{q=1} is not the identity; no naive confluence") {}
};

struct SyntaxError : Error {
    std::size_t position;
    SyntaxError(std::size_t pos, const std::string& w)
        : Error("syntax error at position " + std::to_string(pos) + ": " + w), position(pos) {}
};

struct DivisionByZeroExpression : Error {
    DivisionByZeroExpression() : Error("expression divides by zero") {}
};

struct UnknownCommand : Error {
    explicit UnknownCommand(const std::string& c) : Error("unknown command: " + c) {}
};

struct FlagConflict : Error {
    explicit FlagConflict(const std::string& w) : Error("flag conflict: " + w) {}
};

struct InputError : Error {
    explicit InputError(const std::string& w) : Error(w) {}
};

}  // namespace qcurv
