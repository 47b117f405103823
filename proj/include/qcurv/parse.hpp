// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cctype>
#include <functional>
#include <string>

#include "tower.hpp"

namespace qcurv {

/// Recursive-descent parser for exact rational expressions in q and x.
/// Grammar: integers, `q`, `x`, binary + - * / ^ (integer exponents),
/// parentheses; `^` binds tighter than unary minus; * and / associate left,
/// then + and -. Whitespace is insignificant.
template <class K>
class ExprParser {
public:
    using Lit = std::function<K(const std::string&)>;

    explicit ExprParser(std::string text, Lit lit)
        : s_(std::move(text)), lit_(std::move(lit)) {}

    XRat<K> parse() {
        XRat<K> v = expr();
        skip_ws();
        if (pos_ != s_.size()) throw SyntaxError(pos_, "trailing input");
        return v;
    }

private:
    std::string s_;
    std::size_t pos_ = 0;
    Lit lit_;

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool peek(char c) {
        skip_ws();
        return pos_ < s_.size() && s_[pos_] == c;
    }
    bool accept(char c) {
        if (peek(c)) { ++pos_; return true; }
        return false;
    }

    XRat<K> expr() {
        XRat<K> v = term();
        while (true) {
            if (accept('+')) v += term();
            else if (accept('-')) v -= term();
            else return v;
        }
    }

    XRat<K> term() {
        XRat<K> v = unary();
        while (true) {
            if (accept('*')) v *= unary();
            else if (accept('/')) {
                XRat<K> d = unary();
                if (d.is_zero()) throw DivisionByZeroExpression();
                v /= d;
            } else {
                return v;
            }
        }
    }

    XRat<K> unary() {
        if (accept('-')) return -unary();
        return power();
    }

    XRat<K> power() {
        XRat<K> base = atom();
        if (accept('^')) {
            long e = exponent();
            if (e < 0 && base.is_zero()) throw DivisionByZeroExpression();
            return base.pow(e);
        }
        return base;
    }

    long exponent() {
        skip_ws();
        bool neg = false;
        bool paren = accept('(');
        if (paren) skip_ws();
        if (accept('-')) neg = true;
        skip_ws();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
            throw SyntaxError(pos_, "integer exponent expected");
        long v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = v * 10 + (s_[pos_] - '0');
            if (v > (1L << 30)) throw SyntaxError(pos_, "exponent too large");
            ++pos_;
        }
        if (paren && !accept(')')) throw SyntaxError(pos_, "')' expected after exponent");
        return neg ? -v : v;
    }

    XRat<K> atom() {
        skip_ws();
        if (pos_ >= s_.size()) throw SyntaxError(pos_, "unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            XRat<K> v = expr();
            if (!accept(')')) throw SyntaxError(pos_, "')' expected");
            return v;
        }
        if (c == 'q') { ++pos_; return embed_q<K>(q_gen<K>()); }
        if (c == 'x') { ++pos_; return x_gen<K>(); }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return embed_base<K>(lit_(s_.substr(start, pos_ - start)));
        }
        throw SyntaxError(pos_, std::string("unexpected character '") + c + "'");
    }
};

inline Rational default_literal(const std::string& s) { return Rational::from_integer_string(s); }

/// Parses over Q(q)(x).
inline XRat<Rational> parse_expr(const std::string& s) {
    return ExprParser<Rational>(s, &default_literal).parse();
}

/// Parses over F_p(q)(x): literals are folded modulo p exactly.
inline XRat<GFp> parse_expr_mod(const std::string& s, unsigned long p) {
    auto lit = [p](const std::string& digits) {
        GFp acc(0, p);
        GFp ten(10, p);
        for (char c : digits) acc = acc * ten + GFp(c - '0', p);
        return acc;
    };
    return ExprParser<GFp>(s, lit).parse();
}

}  // namespace qcurv
