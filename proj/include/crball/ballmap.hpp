#pragma once

// Rational maps between balls and Siegel domains.
//
// A ball-side map lives in z1..zn; a siegel-side map in z1..z_{n-1}, w, with
// components grouped as f (n-1), phi (N-n), g (1). In squared mode component j
// is sqrt(scale_sq[j]) * P[j]; every check below consumes only |component|^2
// or conj(component) * component, so the stored data stays rational. The last
// component (the w or z_N slot) always has scale 1.
//
// Cayley: rho(z, w) = (2z, 1 + iw) / (1 - iw) carries H_n onto B_n, with
// inverse (Z', Z_n) -> (Z' / (1 + Z_n), i (1 - Z_n) / (1 + Z_n)).

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "poly.hpp"
#include "random.hpp"
#include "univariate.hpp"

namespace crball {

enum class Side { ball, siegel };
enum class CoeffMode { exact, squared };

inline std::string to_string(Side s) { return s == Side::ball ? "ball" : "siegel"; }
inline std::string to_string(CoeffMode m) { return m == CoeffMode::exact ? "exact" : "squared"; }

inline RegistryPtr ball_registry(int n) {
    std::vector<VarRegistry::Var> v;
    for (int k = 1; k <= n; ++k) v.push_back({"z" + std::to_string(k), VarRole::z});
    return VarRegistry::make(std::move(v));
}

inline RegistryPtr siegel_registry(int n) {
    std::vector<VarRegistry::Var> v;
    for (int k = 1; k < n; ++k) v.push_back({"z" + std::to_string(k), VarRole::z});
    v.push_back({"w", VarRole::w});
    return VarRegistry::make(std::move(v));
}

struct RationalMap {
    std::string name;
    int n = 0, N = 0;
    Side side = Side::ball;
    std::vector<MultiPoly> P;
    MultiPoly Q;
    CoeffMode coeff_mode = CoeffMode::exact;
    std::vector<Rational> scale_sq;  // squared mode only, one per component
    bool proper = false;

    const RegistryPtr& registry() const { return Q.registry(); }

    Rational scale(std::size_t j) const {
        return coeff_mode == CoeffMode::squared ? scale_sq[j] : Rational(1);
    }

    void validate() const {
        if (n < 1 || N < n) throw DimensionMismatch("need 1 <= n <= N");
        if (P.size() != static_cast<std::size_t>(N)) throw DimensionMismatch("expected " + std::to_string(N) + " components");
        RegistryPtr expect = side == Side::ball ? ball_registry(n) : siegel_registry(n);
        if (!same_registry(Q.registry(), expect)) throw RegistryMismatch("denominator is not over the " + to_string(side) + " variables");
        for (const auto& p : P) {
            if (!same_registry(p.registry(), expect)) throw RegistryMismatch("component is not over the " + to_string(side) + " variables");
        }
        if (Q.is_zero()) throw DivisionByZero("denominator is identically 0");
        if (coeff_mode == CoeffMode::squared) {
            if (scale_sq.size() != P.size()) throw DimensionMismatch("one squared scale per component");
            for (const auto& s : scale_sq) {
                if (sgn(s) <= 0) throw DimensionMismatch("squared scales must be positive");
            }
            if (scale_sq.back() != 1) throw DimensionMismatch("the last component must have scale 1");
        }
    }

    /// Builds a map over the standard registry of `side` from polynomial texts.
    static RationalMap parse(std::string name, int n, Side side, const std::vector<std::string>& P,
                             const std::string& Q = "1", std::vector<Rational> scale_sq = {}) {
        RationalMap m;
        m.name = std::move(name);
        m.n = n;
        m.N = static_cast<int>(P.size());
        m.side = side;
        RegistryPtr reg = side == Side::ball ? ball_registry(n) : siegel_registry(n);
        for (const auto& s : P) m.P.push_back(parse_poly(reg, s));
        m.Q = parse_poly(reg, Q);
        if (!scale_sq.empty()) {
            m.coeff_mode = CoeffMode::squared;
            m.scale_sq = std::move(scale_sq);
        }
        m.validate();
        return m;
    }
};

namespace detail {

// Same polynomial over another registry, matching variables by name.
inline MultiPoly rebind(const MultiPoly& p, const RegistryPtr& target) {
    const auto& src = *p.registry();
    std::vector<std::size_t> where(src.size());
    for (std::size_t v = 0; v < src.size(); ++v) where[v] = target->index(src[v].name);
    std::vector<MultiPoly::Term> out;
    for (const auto& [e, c] : p.terms()) {
        Exponents f(target->size(), 0);
        for (std::size_t v = 0; v < e.size(); ++v) f[where[v]] += e[v];
        out.emplace_back(std::move(f), c);
    }
    return MultiPoly::from_terms(target, std::move(out));
}

// X0^d * p(X / X0), with X[v] standing for variable v.
inline MultiPoly homogenize(const MultiPoly& p, int d, const std::vector<MultiPoly>& X, const MultiPoly& X0) {
    std::vector<std::vector<MultiPoly>> pw(X.size() + 1);
    auto power = [&](std::size_t v, int k) -> const MultiPoly& {
        auto& cache = pw[v];
        const MultiPoly& base = v < X.size() ? X[v] : X0;
        if (cache.empty()) cache.emplace_back(base.registry(), GaussianRational(1));
        while (static_cast<int>(cache.size()) <= k) cache.push_back(cache.back() * base);
        return cache[static_cast<std::size_t>(k)];
    };
    MultiPoly out(X0.registry());
    for (const auto& [e, c] : p.terms()) {
        MultiPoly t(X0.registry(), c);
        for (std::size_t v = 0; v < e.size(); ++v) {
            if (e[v] > 0) t *= power(v, e[v]);
        }
        t *= power(X.size(), d - exponent_sum(e));
        out += t;
    }
    return out;
}

inline int map_degree(const RationalMap& F) {
    Degree d = total_degree(F.Q);
    for (const auto& p : F.P) d = Degree::max(d, total_degree(p));
    return d.is_zero_poly() ? 0 : d.value();
}

// Divides every numerator and the denominator by the leading coefficient of Q.
inline void normalize(RationalMap& F) {
    GaussianRational inv = F.Q.terms().back().second.inverse();
    for (auto& p : F.P) p *= inv;
    F.Q *= inv;
}

} // namespace detail

struct ProprietyCertificate {
    Side side = Side::ball;
    MultiPoly residual;  // siegel: the complexified identity; sphere: remainder mod z.zeta - 1
    std::optional<MultiPoly> quotient;  // sphere only
    bool proper() const { return residual.is_zero(); }
    void ensure(const std::string& name) const {
        if (!proper()) throw NotProper(name + ": residual " + to_string(residual));
    }
};

/// Registry z1..zn, zeta1..zetan for a ball-side map.
inline RegistryPtr complexified_ball_registry(int n) {
    std::vector<VarRegistry::Var> v;
    for (int k = 1; k <= n; ++k) v.push_back({"z" + std::to_string(k), VarRole::z});
    for (int k = 1; k <= n; ++k) v.push_back({"zeta" + std::to_string(k), VarRole::zeta});
    return VarRegistry::make(std::move(v));
}

/// Registry z, w, zeta, eta for a siegel-side map.
inline RegistryPtr complexified_siegel_registry(int n) {
    std::vector<VarRegistry::Var> v;
    for (int k = 1; k < n; ++k) v.push_back({"z" + std::to_string(k), VarRole::z});
    v.push_back({"w", VarRole::w});
    for (int k = 1; k < n; ++k) v.push_back({"zeta" + std::to_string(k), VarRole::zeta});
    v.push_back({"eta", VarRole::eta});
    return VarRegistry::make(std::move(v));
}

/// sum_j s_j P_j(z) conj(P_j)(zeta) - Q(z) conj(Q)(zeta), reduced modulo
/// z.zeta - 1. Terms divisible by z1 zeta1 are rewritten with
/// z1 zeta1 = 1 - sum_{k>=2} z_k zeta_k until none remain; that leading term
/// makes the single generator a Groebner basis, so the remainder vanishes
/// exactly when the divisor divides.
inline ProprietyCertificate propriety_check_sphere(const RationalMap& F) {
    if (F.side != Side::ball) throw DimensionMismatch("sphere check needs a ball-side map");
    F.validate();
    RegistryPtr reg = complexified_ball_registry(F.n);
    auto lift = [&](const MultiPoly& p) { return detail::rebind(p, reg); };
    MultiPoly r(reg);
    for (std::size_t j = 0; j < F.P.size(); ++j) {
        MultiPoly p = lift(F.P[j]);
        r += GaussianRational(F.scale(j)) * (p * formal_conjugate(p));
    }
    MultiPoly q = lift(F.Q);
    r -= q * formal_conjugate(q);

    const auto nn = static_cast<std::size_t>(F.n);
    MultiPoly divisor(reg, GaussianRational(-1));
    for (std::size_t k = 0; k < nn; ++k) divisor += MultiPoly::variable(reg, k) * MultiPoly::variable(reg, nn + k);
    MultiPoly quotient(reg);
    for (;;) {
        std::vector<MultiPoly::Term> lead;
        for (const auto& [e, c] : r.terms()) {
            if (e[0] > 0 && e[nn] > 0) {
                Exponents f = e;
                --f[0];
                --f[nn];
                lead.emplace_back(std::move(f), c);
            }
        }
        if (lead.empty()) break;
        MultiPoly t = MultiPoly::from_terms(reg, std::move(lead));
        quotient += t;
        r -= t * divisor;
    }
    return {Side::ball, std::move(r), std::move(quotient)};
}

/// (P_g conj(Q) - conj(P_g) Q) / 2i - sum_j s_j P_j conj(P_j) on
/// w = eta + 2i z.zeta, where conj(.) is evaluated at (zeta, eta).
inline ProprietyCertificate propriety_check_siegel(const RationalMap& F) {
    if (F.side != Side::siegel) throw DimensionMismatch("siegel check needs a siegel-side map");
    F.validate();
    RegistryPtr reg = complexified_siegel_registry(F.n);
    auto lift = [&](const MultiPoly& p) { return detail::rebind(p, reg); };
    const std::size_t last = F.P.size() - 1;
    MultiPoly q = lift(F.Q), qb = formal_conjugate(q);
    MultiPoly g = lift(F.P[last]), gb = formal_conjugate(g);
    MultiPoly r = (g * qb - gb * q) * GaussianRational(Rational(0), Rational(-1, 2));
    for (std::size_t j = 0; j < last; ++j) {
        MultiPoly p = lift(F.P[j]);
        r -= GaussianRational(F.scale(j)) * (p * formal_conjugate(p));
    }
    const auto nz = static_cast<std::size_t>(F.n - 1);
    MultiPoly w = MultiPoly::variable(reg, reg->index("eta"));
    for (std::size_t k = 0; k < nz; ++k) {
        w += GaussianRational(Rational(0), Rational(2)) * MultiPoly::variable(reg, k) * MultiPoly::variable(reg, nz + 1 + k);
    }
    r = substitute(r, std::map<std::size_t, MultiPoly>{{nz, w}});
    return {Side::siegel, std::move(r), std::nullopt};
}

inline ProprietyCertificate propriety_check(const RationalMap& F) {
    return F.side == Side::ball ? propriety_check_sphere(F) : propriety_check_siegel(F);
}

struct DegreeReport {
    int degree = 0;
    int lines = 0;
    int lines_with_common_root = 0;
    bool probably_reduced() const { return lines_with_common_root == 0; }
    std::string label() const { return probably_reduced() ? "probably reduced" : "common factor detected"; }
};

/// max(deg P_j, deg Q), with a reducedness probe: the components are
/// restricted to random lines a + t b and the gcd of the restrictions is
/// checked to be constant.
inline DegreeReport degree(const RationalMap& F, Rng& rng, int lines = 20) {
    DegreeReport rep;
    rep.degree = detail::map_degree(F);
    rep.lines = lines;
    const std::size_t nv = F.registry()->size();
    std::vector<GaussianRational> ts;
    for (int k = 0; k <= rep.degree; ++k) ts.emplace_back(k);
    for (int l = 0; l < lines; ++l) {
        auto a = rng.gaussian_point(nv), b = rng.gaussian_point(nv);
        auto restrict_ = [&](const MultiPoly& p) {
            std::vector<GaussianRational> ys;
            for (const auto& t : ts) {
                std::vector<GaussianRational> x(nv);
                for (std::size_t v = 0; v < nv; ++v) x[v] = a[v] + t * b[v];
                ys.push_back(p.evaluate(x));
            }
            return interpolate(ts, ys);
        };
        UniPoly g = restrict_(F.Q);
        for (const auto& p : F.P) g = gcd(g, restrict_(p));
        if (g.degree() > 0) ++rep.lines_with_common_root;
    }
    return rep;
}

/// Composes with the Cayley transform on both sides: a ball-side map becomes
/// rho_N^{-1} o F o rho_n and a siegel-side map becomes rho_N o F o rho_n^{-1}.
inline RationalMap cayley_conjugate(const RationalMap& F) {
    F.validate();
    const int d = detail::map_degree(F);
    const GaussianRational I = GaussianRational::i();
    RationalMap out;
    out.name = F.name;
    out.n = F.n;
    out.N = F.N;
    out.coeff_mode = F.coeff_mode;
    out.scale_sq = F.scale_sq;
    out.proper = F.proper;
    const auto nn = static_cast<std::size_t>(F.n);
    const std::size_t last = F.P.size() - 1;
    if (F.side == Side::ball) {
        RegistryPtr reg = siegel_registry(F.n);
        MultiPoly w = MultiPoly::variable(reg, nn - 1), one(reg, GaussianRational(1));
        std::vector<MultiPoly> X;
        for (std::size_t k = 0; k + 1 < nn; ++k) X.push_back(GaussianRational(2) * MultiPoly::variable(reg, k));
        X.push_back(one + I * w);
        MultiPoly X0 = one - I * w;
        std::vector<MultiPoly> H;
        for (const auto& p : F.P) H.push_back(detail::homogenize(p, d, X, X0));
        MultiPoly HQ = detail::homogenize(F.Q, d, X, X0);
        out.side = Side::siegel;
        out.Q = HQ + H[last];
        for (std::size_t j = 0; j < last; ++j) out.P.push_back(H[j]);
        out.P.push_back(I * (HQ - H[last]));
    } else {
        RegistryPtr reg = ball_registry(F.n);
        MultiPoly zn = MultiPoly::variable(reg, nn - 1), one(reg, GaussianRational(1));
        std::vector<MultiPoly> X;
        for (std::size_t k = 0; k + 1 < nn; ++k) X.push_back(MultiPoly::variable(reg, k));
        X.push_back(I * (one - zn));
        MultiPoly X0 = one + zn;
        std::vector<MultiPoly> H;
        for (const auto& p : F.P) H.push_back(detail::homogenize(p, d, X, X0));
        MultiPoly HQ = detail::homogenize(F.Q, d, X, X0);
        out.side = Side::ball;
        out.Q = HQ - I * H[last];
        for (std::size_t j = 0; j < last; ++j) out.P.push_back(GaussianRational(2) * H[j]);
        out.P.push_back(HQ + I * H[last]);
    }
    if (out.Q.is_zero()) throw DivisionByZero("Cayley conjugate has a zero denominator");
    detail::normalize(out);
    return out;
}

/// True when F and G are the same rational map: P_j(F) Q(G) = P_j(G) Q(F) for
/// all j, with equal scales.
inline bool same_map(const RationalMap& F, const RationalMap& G) {
    if (F.side != G.side || F.n != G.n || F.N != G.N) return false;
    if (!same_registry(F.registry(), G.registry())) return false;
    for (std::size_t j = 0; j < F.P.size(); ++j) {
        if (F.scale(j) != G.scale(j)) return false;
        if (F.P[j] * G.Q != G.P[j] * F.Q) return false;
    }
    return true;
}

/// A point (z0, w0) of the Heisenberg boundary, Im w0 = |z0|^2.
struct BoundaryPoint {
    std::vector<GaussianRational> z0;
    GaussianRational w0;

    bool on_boundary() const {
        Rational s(0);
        for (const auto& z : z0) s += z.norm();
        return w0.im() == s;
    }
    std::vector<GaussianRational> coords() const {
        auto c = z0;
        c.push_back(w0);
        return c;
    }
};

inline BoundaryPoint random_boundary_point(int n, Rng& rng) {
    BoundaryPoint p;
    Rational s(0);
    for (int k = 1; k < n; ++k) {
        p.z0.push_back(rng.gaussian());
        s += p.z0.back().norm();
    }
    p.w0 = GaussianRational(rng.rational(), s);
    return p;
}

/// sigma_p(z, w) = (z + z0, w + w0 + 2i z.conj(z0)) as substitution bindings
/// on the siegel registry.
inline std::map<std::size_t, MultiPoly> sigma_bindings(const RegistryPtr& reg, const BoundaryPoint& p) {
    const std::size_t nz = p.z0.size();
    const GaussianRational two_i(Rational(0), Rational(2));
    std::map<std::size_t, MultiPoly> b;
    MultiPoly w = MultiPoly::variable(reg, nz) + MultiPoly(reg, p.w0);
    for (std::size_t k = 0; k < nz; ++k) {
        MultiPoly z = MultiPoly::variable(reg, k);
        b.emplace(k, z + MultiPoly(reg, p.z0[k]));
        w += two_i * p.z0[k].conj() * z;
    }
    b.emplace(nz, std::move(w));
    return b;
}

/// F_p = tau_p o F o sigma_p, with
/// tau_p(z*, w*) = (z* - f(p), w* - conj(g(p)) - 2i z*.conj(f(p))).
/// Using conj(g(p)) makes F_p(0) = 0 whenever F(p) lies on the boundary.
inline RationalMap translate_to_point(const RationalMap& F, const BoundaryPoint& p) {
    if (F.side != Side::siegel) throw DimensionMismatch("translate_to_point needs a siegel-side map");
    F.validate();
    if (p.z0.size() + 1 != static_cast<std::size_t>(F.n)) throw DimensionMismatch("point has the wrong dimension");
    if (!p.on_boundary()) throw PointNotOnBoundary("Im w0 != |z0|^2");
    const RegistryPtr& reg = F.registry();
    auto at = p.coords();
    GaussianRational qp = F.Q.evaluate(at);
    if (qp.is_zero()) throw DivisionByZero("denominator vanishes at p");
    GaussianRational qinv = qp.inverse();
    auto sigma = sigma_bindings(reg, p);
    const std::size_t last = F.P.size() - 1;
    RationalMap out = F;
    out.Q = substitute(F.Q, sigma);
    const GaussianRational two_i(Rational(0), Rational(2));
    MultiPoly g = substitute(F.P[last], sigma) - (F.P[last].evaluate(at) * qinv).conj() * out.Q;
    for (std::size_t j = 0; j < last; ++j) {
        GaussianRational fj = F.P[j].evaluate(at) * qinv;
        MultiPoly pj = substitute(F.P[j], sigma);
        g -= two_i * GaussianRational(F.scale(j)) * fj.conj() * pj;
        out.P[j] = pj - fj * out.Q;
    }
    out.P[last] = std::move(g);
    return out;
}

/// The Segre variety Q_(zeta, eta) = {(w - conj(eta)) / 2i = z.conj(zeta)}.
struct SegreParams {
    std::vector<GaussianRational> zeta;
    GaussianRational eta;
};

struct SegreRestricted {
    std::vector<MultiPoly> P;  // over z1..z_{n-1}
    MultiPoly Q;
    int degree = 0;
};

/// Substitutes w = conj(eta) + 2i z.conj(zeta).
inline SegreRestricted segre_restrict(const RationalMap& F, const SegreParams& sp) {
    if (F.side != Side::siegel) throw DimensionMismatch("segre_restrict needs a siegel-side map");
    if (sp.zeta.size() + 1 != static_cast<std::size_t>(F.n)) throw DimensionMismatch("Segre parameters have the wrong dimension");
    std::vector<VarRegistry::Var> vars;
    for (int k = 1; k < F.n; ++k) vars.push_back({"z" + std::to_string(k), VarRole::z});
    RegistryPtr zr = VarRegistry::make(std::move(vars));
    std::map<std::size_t, MultiPoly> b;
    MultiPoly w(zr, sp.eta.conj());
    const GaussianRational two_i(Rational(0), Rational(2));
    for (std::size_t k = 0; k < sp.zeta.size(); ++k) {
        MultiPoly z = MultiPoly::variable(zr, k);
        b.emplace(k, z);
        w += two_i * sp.zeta[k].conj() * z;
    }
    b.emplace(sp.zeta.size(), std::move(w));
    SegreRestricted r;
    r.Q = substitute(F.Q, b);
    Degree d = total_degree(r.Q);
    for (const auto& p : F.P) {
        r.P.push_back(substitute(p, b));
        d = Degree::max(d, total_degree(r.P.back()));
    }
    r.degree = d.is_zero_poly() ? 0 : d.value();
    return r;
}

/// sigma_p maps Q_0 = {w = 0} into Q_p: checks the defining equation of Q_p
/// holds identically on sigma_p(z, 0).
inline bool sigma_maps_segre(int n, const BoundaryPoint& p) {
    RegistryPtr reg = siegel_registry(n);
    auto sigma = sigma_bindings(reg, p);
    const std::size_t nz = p.z0.size();
    std::map<std::size_t, MultiPoly> on_q0{{nz, MultiPoly(reg)}};
    MultiPoly w = substitute(sigma.at(nz), on_q0);
    MultiPoly rhs(reg, p.w0.conj());
    const GaussianRational two_i(Rational(0), Rational(2));
    for (std::size_t k = 0; k < nz; ++k) rhs += two_i * p.z0[k].conj() * substitute(sigma.at(k), on_q0);
    return w == rhs;
}

/// |1 - iw|^2 - |1 + iw|^2 - 4 Im w and |2z|^2 - 4|z|^2, complexified; both
/// vanish, so rho carries Im w > |z|^2 onto |Z| < 1.
inline bool cayley_boundary_identity(int n) {
    RegistryPtr reg = complexified_siegel_registry(n);
    const GaussianRational I = GaussianRational::i();
    MultiPoly one(reg, GaussianRational(1));
    MultiPoly w = MultiPoly::variable(reg, reg->index("w"));
    MultiPoly den = one - I * w, last = one + I * w;
    MultiPoly im_w = (w - formal_conjugate(w)) * GaussianRational(Rational(0), Rational(-1, 2));
    MultiPoly lhs = den * formal_conjugate(den) - last * formal_conjugate(last) - GaussianRational(4) * im_w;
    MultiPoly norm2(reg);
    for (int k = 1; k < n; ++k) {
        MultiPoly z = MultiPoly::variable(reg, reg->index("z" + std::to_string(k)));
        MultiPoly Z = GaussianRational(2) * z;
        norm2 += Z * formal_conjugate(Z) - GaussianRational(4) * z * formal_conjugate(z);
    }
    return lhs.is_zero() && norm2.is_zero();
}

} // namespace crball
