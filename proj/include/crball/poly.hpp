#pragma once

// Sparse multivariate polynomials over GaussianRational.
//
// A polynomial is bound to a VarRegistry, the ordered list of variable names
// its exponent vectors index into. Terms are kept sorted in ascending
// graded-lexicographic order with no zero coefficients, so two polynomials
// over the same registry are equal iff their term vectors are equal.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "scalar.hpp"

namespace crball {

enum class VarRole { z, w, zeta, eta, epsilon };

inline std::string_view to_string(VarRole role) {
    switch (role) {
    case VarRole::z: return "z";
    case VarRole::w: return "w";
    case VarRole::zeta: return "zeta";
    case VarRole::eta: return "eta";
    case VarRole::epsilon: return "epsilon";
    }
    return "?";
}

class VarRegistry;
using RegistryPtr = std::shared_ptr<const VarRegistry>;

class VarRegistry {
public:
    struct Var {
        std::string name;
        VarRole role;
        friend bool operator==(const Var&, const Var&) = default;
    };

    static RegistryPtr make(std::vector<Var> vars) {
        for (std::size_t a = 0; a < vars.size(); ++a) {
            for (std::size_t b = a + 1; b < vars.size(); ++b) {
                if (vars[a].name == vars[b].name) {
                    throw RegistryMismatch("duplicate variable '" + vars[a].name + "'");
                }
            }
        }
        return std::shared_ptr<const VarRegistry>(new VarRegistry(std::move(vars)));
    }

    std::size_t size() const { return vars_.size(); }
    const Var& operator[](std::size_t k) const { return vars_[k]; }
    const std::vector<Var>& vars() const { return vars_; }

    std::optional<std::size_t> find(std::string_view name) const {
        for (std::size_t k = 0; k < vars_.size(); ++k) {
            if (vars_[k].name == name) return k;
        }
        return std::nullopt;
    }

    std::size_t index(std::string_view name) const {
        if (auto k = find(name)) return *k;
        throw UnknownVariable("'" + std::string(name) + "'");
    }

    std::vector<std::size_t> with_role(VarRole role) const {
        std::vector<std::size_t> out;
        for (std::size_t k = 0; k < vars_.size(); ++k) {
            if (vars_[k].role == role) out.push_back(k);
        }
        return out;
    }

    friend bool operator==(const VarRegistry& a, const VarRegistry& b) { return a.vars_ == b.vars_; }

private:
    explicit VarRegistry(std::vector<Var> vars) : vars_(std::move(vars)) {}
    std::vector<Var> vars_;
};

inline bool same_registry(const RegistryPtr& a, const RegistryPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return *a == *b;
}

/// Total degree of a polynomial, or the marker for the zero polynomial,
/// which compares below every integer degree.
class Degree {
public:
    constexpr Degree() = default;
    constexpr explicit Degree(int value) : value_(value), zero_poly_(false) {}

    static constexpr Degree zero_poly() { return Degree(); }

    constexpr bool is_zero_poly() const { return zero_poly_; }
    int value() const {
        if (zero_poly_) throw std::logic_error("degree of the zero polynomial has no integer value");
        return value_;
    }

    friend constexpr bool operator==(Degree a, Degree b) {
        return a.zero_poly_ == b.zero_poly_ && (a.zero_poly_ || a.value_ == b.value_);
    }
    friend constexpr std::strong_ordering operator<=>(Degree a, Degree b) {
        if (a.zero_poly_ || b.zero_poly_) return !a.zero_poly_ <=> !b.zero_poly_;
        return a.value_ <=> b.value_;
    }
    friend constexpr bool operator<=(Degree a, int bound) { return a <= Degree(bound); }

    /// Degree of a product; the zero polynomial absorbs.
    friend constexpr Degree operator+(Degree a, Degree b) {
        if (a.zero_poly_ || b.zero_poly_) return zero_poly();
        return Degree(a.value_ + b.value_);
    }

    static Degree max(Degree a, Degree b) { return a < b ? b : a; }

    std::string to_string() const { return zero_poly_ ? "-inf" : std::to_string(value_); }

private:
    int value_ = 0;
    bool zero_poly_ = true;
};

using Exponents = std::vector<std::uint16_t>;

inline int exponent_sum(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0); }

/// Ascending graded-lexicographic comparison.
inline bool grlex_less(const Exponents& a, const Exponents& b) {
    int da = exponent_sum(a), db = exponent_sum(b);
    if (da != db) return da < db;
    return a < b;
}

class MultiPoly {
public:
    using Term = std::pair<Exponents, GaussianRational>;

    MultiPoly() = default;
    explicit MultiPoly(RegistryPtr reg) : reg_(std::move(reg)) {}
    MultiPoly(RegistryPtr reg, const GaussianRational& c) : reg_(std::move(reg)) {
        if (!c.is_zero()) terms_.emplace_back(Exponents(reg_->size(), 0), c);
    }

    static MultiPoly variable(const RegistryPtr& reg, std::size_t k) {
        if (k >= reg->size()) throw UnknownVariable("index " + std::to_string(k));
        Exponents e(reg->size(), 0);
        e[k] = 1;
        return monomial(reg, std::move(e), GaussianRational(1));
    }
    static MultiPoly variable(const RegistryPtr& reg, std::string_view name) {
        return variable(reg, reg->index(name));
    }

    static MultiPoly monomial(const RegistryPtr& reg, Exponents e, const GaussianRational& c) {
        if (e.size() != reg->size()) throw RegistryMismatch("exponent vector length");
        MultiPoly p(reg);
        if (!c.is_zero()) p.terms_.emplace_back(std::move(e), c);
        return p;
    }

    /// Canonicalizes an arbitrary term list: sorts, merges equal exponents,
    /// drops zeros.
    static MultiPoly from_terms(const RegistryPtr& reg, std::vector<Term> terms) {
        for (const auto& t : terms) {
            if (t.first.size() != reg->size()) throw RegistryMismatch("exponent vector length");
        }
        MultiPoly p(reg);
        p.terms_ = canonicalize(std::move(terms));
        return p;
    }

    const RegistryPtr& registry() const { return reg_; }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t num_terms() const { return terms_.size(); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && exponent_sum(terms_[0].first) == 0); }

    GaussianRational coefficient(const Exponents& e) const {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                                   [](const Term& t, const Exponents& x) { return grlex_less(t.first, x); });
        if (it != terms_.end() && it->first == e) return it->second;
        return {};
    }
    GaussianRational constant_term() const {
        if (!terms_.empty() && exponent_sum(terms_[0].first) == 0) return terms_[0].second;
        return {};
    }

    MultiPoly operator-() const {
        MultiPoly r = *this;
        for (auto& t : r.terms_) t.second = -t.second;
        return r;
    }

    MultiPoly& operator+=(const MultiPoly& o) { return *this = add(*this, o, false); }
    MultiPoly& operator-=(const MultiPoly& o) { return *this = add(*this, o, true); }
    MultiPoly& operator*=(const MultiPoly& o) { return *this = mul(*this, o); }
    MultiPoly& operator*=(const GaussianRational& c) {
        if (c.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& t : terms_) t.second *= c;
        return *this;
    }

    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) { return add(a, b, false); }
    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return add(a, b, true); }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) { return mul(a, b); }
    friend MultiPoly operator*(MultiPoly a, const GaussianRational& c) { return a *= c; }
    friend MultiPoly operator*(const GaussianRational& c, MultiPoly a) { return a *= c; }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return same_registry(a.reg_, b.reg_) && a.terms_ == b.terms_;
    }
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

    GaussianRational evaluate(std::span<const GaussianRational> point) const {
        if (point.size() != reg_->size()) throw DimensionMismatch("evaluation point has wrong dimension");
        std::vector<std::vector<GaussianRational>> powers(point.size(), {GaussianRational(1)});
        GaussianRational sum;
        for (const auto& [e, c] : terms_) {
            GaussianRational v = c;
            for (std::size_t k = 0; k < e.size(); ++k) {
                if (e[k] == 0) continue;
                auto& pw = powers[k];
                while (pw.size() <= e[k]) pw.push_back(pw.back() * point[k]);
                v *= pw[e[k]];
            }
            sum += v;
        }
        return sum;
    }

private:
    static std::vector<Term> canonicalize(std::vector<Term> terms) {
        std::sort(terms.begin(), terms.end(),
                  [](const Term& a, const Term& b) { return grlex_less(a.first, b.first); });
        std::vector<Term> out;
        out.reserve(terms.size());
        for (auto& t : terms) {
            if (!out.empty() && out.back().first == t.first) {
                out.back().second += t.second;
            } else {
                if (!out.empty() && out.back().second.is_zero()) out.pop_back();
                out.push_back(std::move(t));
            }
        }
        if (!out.empty() && out.back().second.is_zero()) out.pop_back();
        return out;
    }

    static const RegistryPtr& check(const MultiPoly& a, const MultiPoly& b) {
        if (!same_registry(a.reg_, b.reg_)) throw RegistryMismatch("operands use different registries");
        return a.reg_;
    }

    static MultiPoly add(const MultiPoly& a, const MultiPoly& b, bool subtract) {
        MultiPoly r(check(a, b));
        r.terms_.reserve(a.terms_.size() + b.terms_.size());
        auto ia = a.terms_.begin(), ib = b.terms_.begin();
        while (ia != a.terms_.end() || ib != b.terms_.end()) {
            if (ib == b.terms_.end() || (ia != a.terms_.end() && grlex_less(ia->first, ib->first))) {
                r.terms_.push_back(*ia++);
            } else if (ia == a.terms_.end() || grlex_less(ib->first, ia->first)) {
                r.terms_.emplace_back(ib->first, subtract ? -ib->second : ib->second);
                ++ib;
            } else {
                GaussianRational c = subtract ? ia->second - ib->second : ia->second + ib->second;
                if (!c.is_zero()) r.terms_.emplace_back(ia->first, std::move(c));
                ++ia;
                ++ib;
            }
        }
        return r;
    }

    static MultiPoly mul(const MultiPoly& a, const MultiPoly& b) {
        MultiPoly r(check(a, b));
        if (a.is_zero() || b.is_zero()) return r;
        std::vector<Term> prod;
        prod.reserve(a.terms_.size() * b.terms_.size());
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                Exponents e(ea.size());
                for (std::size_t k = 0; k < e.size(); ++k) e[k] = static_cast<std::uint16_t>(ea[k] + eb[k]);
                prod.emplace_back(std::move(e), ca * cb);
            }
        }
        r.terms_ = canonicalize(std::move(prod));
        return r;
    }

    RegistryPtr reg_;
    std::vector<Term> terms_;
};

enum class RingOp { add, sub, mul };

inline MultiPoly ring_ops(const MultiPoly& p, const MultiPoly& q, RingOp op) {
    switch (op) {
    case RingOp::add: return p + q;
    case RingOp::sub: return p - q;
    case RingOp::mul: return p * q;
    }
    return p;
}

inline MultiPoly pow(const MultiPoly& p, unsigned k) {
    MultiPoly r(p.registry(), GaussianRational(1));
    MultiPoly base = p;
    while (k > 0) {
        if (k & 1U) r *= base;
        k >>= 1U;
        if (k > 0) base *= base;
    }
    return r;
}

inline MultiPoly partial(const MultiPoly& p, std::size_t v) {
    if (v >= p.registry()->size()) throw UnknownVariable("index " + std::to_string(v));
    std::vector<MultiPoly::Term> out;
    for (const auto& [e, c] : p.terms()) {
        if (e[v] == 0) continue;
        Exponents d = e;
        --d[v];
        out.emplace_back(std::move(d), c * GaussianRational(static_cast<long>(e[v])));
    }
    return MultiPoly::from_terms(p.registry(), std::move(out));
}

inline MultiPoly partial(const MultiPoly& p, std::string_view name) {
    return partial(p, p.registry()->index(name));
}

/// Simultaneous substitution v -> bindings[v]. All bound polynomials share a
/// target registry. When it differs from p's registry every variable that
/// occurs in p must be bound; otherwise unbound variables are left alone.
inline MultiPoly substitute(const MultiPoly& p, const std::map<std::size_t, MultiPoly>& bindings) {
    const RegistryPtr& src = p.registry();
    RegistryPtr dst = src;
    if (!bindings.empty()) {
        dst = bindings.begin()->second.registry();
        for (const auto& [v, q] : bindings) {
            if (v >= src->size()) throw UnknownVariable("index " + std::to_string(v));
            if (!same_registry(q.registry(), dst)) throw RegistryMismatch("substitution targets use different registries");
        }
    }
    bool same = same_registry(src, dst);
    std::vector<std::vector<MultiPoly>> powers(src->size());
    auto power_of = [&](std::size_t v, unsigned k) -> const MultiPoly& {
        auto& pw = powers[v];
        if (pw.empty()) {
            pw.emplace_back(dst, GaussianRational(1));
            auto it = bindings.find(v);
            if (it != bindings.end()) {
                pw.push_back(it->second);
            } else if (same) {
                pw.push_back(MultiPoly::variable(dst, v));
            } else {
                throw RegistryMismatch("'" + (*src)[v].name + "' is unbound and the target registry differs");
            }
        }
        while (pw.size() <= k) pw.push_back(pw.back() * pw[1]);
        return pw[k];
    };
    MultiPoly result(dst);
    for (const auto& [e, c] : p.terms()) {
        MultiPoly term(dst, c);
        for (std::size_t v = 0; v < e.size(); ++v) {
            if (e[v] > 0) term *= power_of(v, e[v]);
        }
        result += term;
    }
    return result;
}

inline MultiPoly substitute(const MultiPoly& p, const std::map<std::string, MultiPoly>& bindings) {
    std::map<std::size_t, MultiPoly> by_index;
    for (const auto& [name, q] : bindings) by_index.emplace(p.registry()->index(name), q);
    return substitute(p, by_index);
}

namespace detail {
inline int partial_degree(const Exponents& e, std::span<const std::size_t> vars) {
    int d = 0;
    for (std::size_t v : vars) d += e[v];
    return d;
}
inline std::vector<std::size_t> all_vars(const MultiPoly& p) {
    std::vector<std::size_t> v(p.registry()->size());
    std::iota(v.begin(), v.end(), 0);
    return v;
}
} // namespace detail

/// Sum of the terms of total degree exactly d in the selected variables.
inline MultiPoly homogeneous_part(const MultiPoly& p, int d, std::span<const std::size_t> vars) {
    std::vector<MultiPoly::Term> out;
    if (d >= 0) {
        for (const auto& t : p.terms()) {
            if (detail::partial_degree(t.first, vars) == d) out.push_back(t);
        }
    }
    return MultiPoly::from_terms(p.registry(), std::move(out));
}

inline MultiPoly homogeneous_part(const MultiPoly& p, int d) {
    auto vars = detail::all_vars(p);
    return homogeneous_part(p, d, vars);
}

inline Degree total_degree(const MultiPoly& p, std::span<const std::size_t> vars) {
    Degree d = Degree::zero_poly();
    for (const auto& t : p.terms()) d = Degree::max(d, Degree(detail::partial_degree(t.first, vars)));
    return d;
}

inline Degree total_degree(const MultiPoly& p) {
    Degree d = Degree::zero_poly();
    for (const auto& t : p.terms()) d = Degree::max(d, Degree(exponent_sum(t.first)));
    return d;
}

/// Largest exponent of variable v, the zero marker for p = 0.
inline Degree degree_in(const MultiPoly& p, std::size_t v) {
    Degree d = Degree::zero_poly();
    for (const auto& t : p.terms()) d = Degree::max(d, Degree(t.first[v]));
    return d;
}

/// Pairs z_k with zeta_k and w with eta, in registry order; every other
/// variable is paired with itself.
inline std::vector<std::size_t> default_pairing(const VarRegistry& reg) {
    std::vector<std::size_t> pairing(reg.size());
    std::iota(pairing.begin(), pairing.end(), 0);
    auto link = [&](VarRole a, VarRole b) {
        auto xs = reg.with_role(a), ys = reg.with_role(b);
        for (std::size_t k = 0; k < std::min(xs.size(), ys.size()); ++k) {
            pairing[xs[k]] = ys[k];
            pairing[ys[k]] = xs[k];
        }
    };
    link(VarRole::z, VarRole::zeta);
    link(VarRole::w, VarRole::eta);
    return pairing;
}

/// Conjugates coefficients and moves each exponent to the paired variable.
inline MultiPoly formal_conjugate(const MultiPoly& p, std::span<const std::size_t> pairing) {
    const auto& reg = *p.registry();
    if (pairing.size() != reg.size()) throw UnknownVariable("pairing does not cover the registry");
    for (std::size_t v = 0; v < pairing.size(); ++v) {
        if (pairing[v] >= reg.size() || pairing[pairing[v]] != v) {
            throw UnknownVariable("pairing is not an involution at '" + reg[v].name + "'");
        }
    }
    std::vector<MultiPoly::Term> out;
    out.reserve(p.num_terms());
    for (const auto& [e, c] : p.terms()) {
        Exponents f(e.size(), 0);
        for (std::size_t v = 0; v < e.size(); ++v) f[pairing[v]] = e[v];
        out.emplace_back(std::move(f), c.conj());
    }
    return MultiPoly::from_terms(p.registry(), std::move(out));
}

inline MultiPoly formal_conjugate(const MultiPoly& p) {
    return formal_conjugate(p, default_pairing(*p.registry()));
}

inline MultiPoly formal_conjugate(const MultiPoly& p, const std::map<std::string, std::string>& pairs) {
    const auto& reg = *p.registry();
    std::vector<std::size_t> pairing(reg.size());
    std::iota(pairing.begin(), pairing.end(), 0);
    for (const auto& [a, b] : pairs) {
        pairing[reg.index(a)] = reg.index(b);
        pairing[reg.index(b)] = reg.index(a);
    }
    return formal_conjugate(p, pairing);
}

/// "coeff*z1^2*w + coeff*..." in descending graded-lex order; "0" for zero.
inline std::string to_string(const MultiPoly& p) {
    if (p.is_zero()) return "0";
    const auto& reg = *p.registry();
    std::string out;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        if (!out.empty()) out += " + ";
        const auto& [e, c] = *it;
        std::string cs = to_string(c);
        bool compound = !c.is_real() && sgn(c.re()) != 0;
        out += compound ? "(" + cs + ")" : cs;
        for (std::size_t v = 0; v < e.size(); ++v) {
            if (e[v] == 0) continue;
            out += "*" + reg[v].name;
            if (e[v] > 1) out += "^" + std::to_string(e[v]);
        }
    }
    return out;
}

namespace detail {

// Recursive-descent parser for polynomial expressions:
//   expr   := term (('+'|'-') term)*
//   term   := unary (('*'|'/') unary)*
//   unary  := '-' unary | '+' unary | power
//   power  := atom ('^' integer)?
//   atom   := integer | integer 'i' | identifier | '(' expr ')'
// The identifier "i" is the imaginary unit unless the registry has a
// variable of that name. Division is only allowed by nonzero constants.
class PolyParser {
public:
    PolyParser(RegistryPtr reg, std::string_view text) : reg_(std::move(reg)), s_(text) {}

    MultiPoly parse() {
        MultiPoly p = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return p;
    }

private:
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg + " at offset " + std::to_string(pos_) + " in '" + s_ + "'");
    }

    MultiPoly expr() {
        MultiPoly p = term();
        for (;;) {
            if (eat('+')) {
                p += term();
            } else if (eat('-')) {
                p -= term();
            } else {
                return p;
            }
        }
    }
    MultiPoly term() {
        MultiPoly p = unary();
        for (;;) {
            if (eat('*')) {
                p *= unary();
            } else if (eat('/')) {
                MultiPoly d = unary();
                if (!d.is_constant() || d.is_zero()) fail("division by a non-constant or zero");
                p *= d.constant_term().inverse();
            } else {
                return p;
            }
        }
    }
    MultiPoly unary() {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        return power();
    }
    MultiPoly power() {
        MultiPoly base = atom();
        if (eat('^')) {
            skip();
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (start == pos_) fail("expected exponent");
            return pow(base, static_cast<unsigned>(std::stoul(s_.substr(start, pos_ - start))));
        }
        return base;
    }
    MultiPoly atom() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            MultiPoly p = expr();
            if (!eat(')')) fail("expected ')'");
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            Rational value(Integer(s_.substr(start, pos_ - start), 10));
            // "2i" is an imaginary literal
            bool imaginary = pos_ < s_.size() && s_[pos_] == 'i' &&
                             (pos_ + 1 == s_.size() ||
                              !(std::isalnum(static_cast<unsigned char>(s_[pos_ + 1])) || s_[pos_ + 1] == '_'));
            if (imaginary) {
                ++pos_;
                return MultiPoly(reg_, GaussianRational(Rational(0), value));
            }
            return MultiPoly(reg_, GaussianRational(value));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
                ++pos_;
            }
            std::string name = s_.substr(start, pos_ - start);
            if (auto k = reg_->find(name)) return MultiPoly::variable(reg_, *k);
            if (name == "i") return MultiPoly(reg_, GaussianRational::i());
            throw UnknownVariable("'" + name + "'");
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    RegistryPtr reg_;
    std::string s_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline MultiPoly parse_poly(const RegistryPtr& reg, std::string_view text) {
    return detail::PolyParser(reg, text).parse();
}

} // namespace crball
