#pragma once

// Dense univariate polynomials over GaussianRational. Only what the
// determinant interpolation and the random-line reducedness probe need.

#include <algorithm>
#include <span>
#include <utility>
#include <vector>

#include "scalar.hpp"

namespace crball {

class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<GaussianRational> coeffs) : c_(std::move(coeffs)) { trim(); }

    /// Coefficients, constant term first; empty for the zero polynomial.
    const std::vector<GaussianRational>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const GaussianRational& lead() const { return c_.back(); }

    GaussianRational operator()(const GaussianRational& x) const {
        GaussianRational acc;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<GaussianRational> r(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        }
        return UniPoly(std::move(r));
    }
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b) {
        std::vector<GaussianRational> r(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] -= b.c_[i];
        return UniPoly(std::move(r));
    }

    /// Remainder of division by a nonzero divisor.
    friend UniPoly operator%(UniPoly a, const UniPoly& b) {
        if (b.is_zero()) throw DivisionByZero("polynomial remainder by 0");
        GaussianRational inv = b.lead().inverse();
        while (!a.is_zero() && a.degree() >= b.degree()) {
            GaussianRational q = a.lead() * inv;
            std::size_t shift = static_cast<std::size_t>(a.degree() - b.degree());
            for (std::size_t k = 0; k < b.c_.size(); ++k) a.c_[k + shift] -= q * b.c_[k];
            a.trim();
        }
        return a;
    }

    UniPoly monic() const {
        if (is_zero()) return {};
        GaussianRational inv = lead().inverse();
        std::vector<GaussianRational> r = c_;
        for (auto& x : r) x *= inv;
        return UniPoly(std::move(r));
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<GaussianRational> c_;
};

/// Monic gcd; gcd(0, 0) = 0.
inline UniPoly gcd(UniPoly a, UniPoly b) {
    while (!b.is_zero()) {
        UniPoly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

/// Newton divided differences for distinct nodes xs; returns the coefficients
/// c_k of sum_k c_k * prod_{j<k} (x - xs[j]). Values may be any type with
/// +, -, and multiplication by a GaussianRational.
template <class Value>
std::vector<Value> newton_coefficients(std::span<const GaussianRational> xs, std::vector<Value> ys) {
    const std::size_t m = xs.size();
    for (std::size_t level = 1; level < m; ++level) {
        for (std::size_t k = m - 1; k >= level; --k) {
            GaussianRational inv = (xs[k] - xs[k - level]).inverse();
            ys[k] = (ys[k] - ys[k - 1]) * inv;
        }
    }
    return ys;
}

inline UniPoly interpolate(std::span<const GaussianRational> xs, std::span<const GaussianRational> ys) {
    auto c = newton_coefficients<GaussianRational>(xs, std::vector<GaussianRational>(ys.begin(), ys.end()));
    UniPoly basis(std::vector<GaussianRational>{GaussianRational(1)});
    std::vector<GaussianRational> acc;
    for (std::size_t k = 0; k < c.size(); ++k) {
        const auto& b = basis.coeffs();
        if (acc.size() < b.size()) acc.resize(b.size());
        for (std::size_t j = 0; j < b.size(); ++j) acc[j] += c[k] * b[j];
        basis = basis * UniPoly(std::vector<GaussianRational>{-xs[k], GaussianRational(1)});
    }
    return UniPoly(std::move(acc));
}

} // namespace crball
