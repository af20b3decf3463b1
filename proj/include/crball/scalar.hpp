#pragma once

// Exact Gaussian-rational scalars, the coefficient field of every polynomial
// in the library. Rationals are GMP mpq values, which are kept in lowest
// terms with a positive denominator by every arithmetic operation.

#include <cctype>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include <gmpxx.h>

#include "errors.hpp"

namespace crball {

using Integer = mpz_class;
using Rational = mpq_class;

/// Builds num/den in canonical form.
inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) {
        throw DivisionByZero("rational with zero denominator");
    }
    Rational r(num, den);
    r.canonicalize();
    return r;
}

/// Parses "a" or "a/b" (optional leading sign, no spaces).
inline Rational parse_rational(std::string_view text) {
    if (text.empty()) {
        throw ParseError("empty rational");
    }
    std::string s(text);
    auto slash = s.find('/');
    auto is_int = [](std::string_view t) {
        if (t.empty()) return false;
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
        }
        return true;
    };
    auto to_int = [](std::string t) {
        if (!t.empty() && t[0] == '+') t.erase(0, 1);
        return Integer(t, 10);
    };
    if (slash == std::string::npos) {
        if (!is_int(s)) throw ParseError("bad integer '" + s + "'");
        return Rational(to_int(s));
    }
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!is_int(num) || !is_int(den) || den[0] == '-' || den[0] == '+') {
        throw ParseError("bad rational '" + s + "'");
    }
    return make_rational(to_int(num), to_int(den));
}

inline std::string to_string(const Rational& r) { return r.get_str(10); }

/// a + b*i with a, b rational.
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(long value) : re_(value) {}  // NOLINT(google-explicit-constructor)
    GaussianRational(Rational re) : re_(std::move(re)) {}  // NOLINT(google-explicit-constructor)
    GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

    static GaussianRational i() { return {Rational(0), Rational(1)}; }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }
    bool is_one() const { return re_ == 1 && sgn(im_) == 0; }

    /// x * conj(x), always a nonnegative rational.
    Rational norm() const { return Rational(re_ * re_ + im_ * im_); }

    GaussianRational conj() const { return {re_, Rational(-im_)}; }

    GaussianRational inverse() const {
        if (is_zero()) throw DivisionByZero("inverse of 0");
        Rational n = norm();
        return {Rational(re_ / n), Rational(-im_ / n)};
    }

    GaussianRational operator-() const { return {Rational(-re_), Rational(-im_)}; }

    GaussianRational& operator+=(const GaussianRational& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        if (sgn(im_) == 0 && sgn(o.im_) == 0) {
            re_ *= o.re_;
            return *this;
        }
        Rational re = re_ * o.re_ - im_ * o.im_;
        Rational im = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(re);
        im_ = std::move(im);
        return *this;
    }
    GaussianRational& operator/=(const GaussianRational& o) {
        if (o.is_zero()) throw DivisionByZero("division by 0");
        if (sgn(o.im_) == 0) {
            re_ /= o.re_;
            im_ /= o.re_;
            return *this;
        }
        return *this *= o.inverse();
    }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

private:
    Rational re_;
    Rational im_;
};

inline GaussianRational conj(const GaussianRational& a) { return a.conj(); }

enum class ArithOp { add, sub, mul, div };

inline GaussianRational arith(const GaussianRational& a, const GaussianRational& b, ArithOp op) {
    switch (op) {
    case ArithOp::add: return a + b;
    case ArithOp::sub: return a - b;
    case ArithOp::mul: return a * b;
    case ArithOp::div: return a / b;
    }
    return {};
}

/// Textual form "a/b+c/d*i"; pure reals print as "a/b", pure imaginaries as "c/d*i".
inline std::string to_string(const GaussianRational& x) {
    if (x.is_real()) return to_string(x.re());
    std::string im = to_string(x.im()) + "*i";
    if (sgn(x.re()) == 0) return im;
    return to_string(x.re()) + (sgn(x.im()) > 0 ? "+" : "") + im;
}

inline std::ostream& operator<<(std::ostream& os, const GaussianRational& x) { return os << to_string(x); }

/// Inverse of to_string. Also accepts integers, "i", "-i", "2i", and a
/// surrounding pair of parentheses.
inline GaussianRational parse_gaussian(std::string_view text) {
    std::string s;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    }
    if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
    if (s.empty()) throw ParseError("empty scalar");

    auto parse_imag = [](std::string part) -> Rational {
        // part ends with 'i'
        part.pop_back();
        if (!part.empty() && part.back() == '*') part.pop_back();
        if (part.empty() || part == "+") return Rational(1);
        if (part == "-") return Rational(-1);
        return parse_rational(part);
    };

    if (s.back() != 'i') return GaussianRational(parse_rational(s));

    // find the sign separating real and imaginary parts
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size() - 1; k > 0; --k) {
        if (s[k] == '+' || s[k] == '-') {
            split = k;
            break;
        }
    }
    if (split == std::string::npos) return {Rational(0), parse_imag(s)};
    return {parse_rational(s.substr(0, split)), parse_imag(s.substr(split))};
}

} // namespace crball
