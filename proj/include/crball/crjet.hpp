#pragma once

// From a normalized 2-jet (f, phi, g) to the matrices E, e, A, B, C, D and the
// degree verdict for the map along the Segre variety Q_0.
//
// Indices in the public API are 1-based where the math is (j, k in S_0,
// variables z_1..z_{n-1}); matrix rows and columns are 0-based.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "lemmas.hpp"
#include "poly.hpp"
#include "polymatrix.hpp"

namespace crball {

/// Number of pairs in S_0.
inline int p_count(int n, int kappa0) { return kappa0 * (2 * n - kappa0 - 1) / 2; }

struct IndexMap {
    int n = 0;
    int kappa0 = 0;
    int N = 0;                            // target dimension
    std::vector<std::pair<int, int>> ell; // ell[l] = iota^{-1}(l), 1-based pairs
    std::size_t s0_size = 0;

    /// S_0 in row-major order, then S_1 = {(kappa0+1, kappa0+t) | t = 1..N-n-P}.
    /// N defaults to the minimum n + P(n, kappa0).
    static IndexMap build(int n, int kappa0, std::optional<int> target = std::nullopt) {
        if (n < 2) throw DimensionMismatch("source dimension must be at least 2");
        if (kappa0 < 0 || kappa0 > n - 1) {
            throw InvalidRank("kappa0 = " + std::to_string(kappa0) + " outside [0, " + std::to_string(n - 1) + "]");
        }
        IndexMap im;
        im.n = n;
        im.kappa0 = kappa0;
        const int P = p_count(n, kappa0);
        im.N = target.value_or(n + P);
        if (im.N < n + P) throw DimensionMismatch("N must be at least n + P(n, kappa0)");
        if (kappa0 == n - 1 && im.N != n + P) throw DimensionMismatch("S_1 is empty when kappa0 = n-1");
        for (int j = 1; j <= kappa0; ++j) {
            for (int k = j; k <= n - 1; ++k) im.ell.emplace_back(j, k);
        }
        im.s0_size = im.ell.size();
        for (int t = 1; t <= im.N - n - P; ++t) im.ell.emplace_back(kappa0 + 1, kappa0 + t);
        return im;
    }

    int n_prime() const { return n - 1; }
    std::size_t N_prime() const { return ell.size(); }

    std::size_t iota(int j, int k) const {
        if (j > k) std::swap(j, k);
        for (std::size_t l = 0; l < ell.size(); ++l) {
            if (ell[l] == std::pair{j, k}) return l;
        }
        throw IndexOutOfRange("(" + std::to_string(j) + "," + std::to_string(k) + ") not in S");
    }
    std::pair<int, int> inverse(std::size_t l) const {
        if (l >= ell.size()) throw IndexOutOfRange("iota index " + std::to_string(l));
        return ell[l];
    }
};

enum class JetMode { free, huang };

inline std::string to_string(JetMode m) { return m == JetMode::free ? "free" : "huang"; }

/// Coefficients of f_j = z_j + lambda_j z_j w, phi_l = mu_l z_p z_q +
/// sum_m phi_lin[l][m] z_{m+1} w + phi_w2[l] w^2, g = w, with l indexing S_0.
struct NormalizedJet {
    int n = 2;
    int kappa0 = 1;
    JetMode mode = JetMode::free;
    std::vector<GaussianRational> lambda;               // n-1
    std::vector<GaussianRational> mu;                   // |S_0|
    std::vector<std::vector<GaussianRational>> phi_lin; // |S_0| x (n-1)
    std::vector<GaussianRational> phi_w2;               // |S_0|

    IndexMap index_map() const { return IndexMap::build(n, kappa0); }

    void validate() const {
        IndexMap im = index_map();
        const auto np = static_cast<std::size_t>(n - 1);
        auto fail = [](const std::string& m) { throw JetInvariantViolated(m); };
        if (lambda.size() != np) fail("lambda needs n-1 entries");
        if (mu.size() != im.s0_size || phi_w2.size() != im.s0_size || phi_lin.size() != im.s0_size) {
            fail("mu, phi_lin and phi_w2 need one entry per pair in S_0");
        }
        for (const auto& row : phi_lin) {
            if (row.size() != np) fail("phi_lin rows need n-1 entries");
        }
        for (std::size_t j = 0; j < np; ++j) {
            bool active = static_cast<int>(j) < kappa0;
            if (active && lambda[j].is_zero()) fail("lambda_" + std::to_string(j + 1) + " = 0 but j <= kappa0");
            if (!active && !lambda[j].is_zero()) fail("lambda_" + std::to_string(j + 1) + " != 0 but j > kappa0");
        }
        for (std::size_t l = 0; l < mu.size(); ++l) {
            if (mu[l].is_zero()) fail("mu at S_0 index " + std::to_string(l + 1) + " is 0");
        }
        if (mode != JetMode::huang) return;
        // mu_j = -2i lambda_j > 0, mu_jj^2 = mu_j, mu_jk^2 = mu_j + mu_k
        std::vector<Rational> mu_single(np);
        for (int j = 0; j < kappa0; ++j) {
            GaussianRational m = GaussianRational(Rational(0), Rational(-2)) * lambda[static_cast<std::size_t>(j)];
            if (!m.is_real() || sgn(m.re()) <= 0) fail("huang mode needs lambda_j = i mu_j / 2 with mu_j > 0");
            mu_single[static_cast<std::size_t>(j)] = m.re();
        }
        for (std::size_t l = 0; l < im.s0_size; ++l) {
            auto [j, k] = im.ell[l];
            const GaussianRational& m = mu[l];
            if (!m.is_real() || sgn(m.re()) <= 0) fail("huang mode needs real positive mu_jk");
            Rational sq = m.re() * m.re();
            Rational want = (j == k || k > kappa0) ? mu_single[static_cast<std::size_t>(j - 1)]
                                                   : Rational(mu_single[static_cast<std::size_t>(j - 1)] +
                                                              mu_single[static_cast<std::size_t>(k - 1)]);
            if (sq != want) fail("mu_" + std::to_string(j) + std::to_string(k) + " violates the square-root relation");
        }
    }
};

/// lambda_j = i mu_j / 2.
inline GaussianRational lambda_from_mu(const Rational& mu) { return {Rational(0), Rational(mu / 2)}; }

/// Registry (z_1..z_{n-1}, w, eps_1..eps_{n-1}).
inline RegistryPtr jet_registry(int n) {
    std::vector<VarRegistry::Var> vars;
    for (int k = 1; k < n; ++k) vars.push_back({"z" + std::to_string(k), VarRole::z});
    vars.push_back({"w", VarRole::w});
    for (int k = 1; k < n; ++k) vars.push_back({"eps" + std::to_string(k), VarRole::epsilon});
    return VarRegistry::make(std::move(vars));
}

struct JetPolys {
    RegistryPtr reg;
    std::vector<MultiPoly> f;    // n-1
    std::vector<MultiPoly> phi;  // |S|
    MultiPoly g;
};

inline JetPolys jet_polynomials(const NormalizedJet& jet) {
    jet.validate();
    IndexMap im = jet.index_map();
    JetPolys out;
    out.reg = jet_registry(jet.n);
    const auto& reg = out.reg;
    const int np = jet.n - 1;
    auto z = [&](int k) { return MultiPoly::variable(reg, static_cast<std::size_t>(k - 1)); };
    MultiPoly w = MultiPoly::variable(reg, static_cast<std::size_t>(np));
    for (int j = 1; j <= np; ++j) out.f.push_back(z(j) + jet.lambda[static_cast<std::size_t>(j - 1)] * (z(j) * w));
    for (std::size_t l = 0; l < im.N_prime(); ++l) {
        auto [p, q] = im.ell[l];
        MultiPoly phi(reg);
        if (l < im.s0_size) {
            phi = jet.mu[l] * (z(p) * z(q));
            for (int m = 1; m <= np; ++m) phi += jet.phi_lin[l][static_cast<std::size_t>(m - 1)] * (z(m) * w);
            phi += jet.phi_w2[l] * (w * w);
        }
        out.phi.push_back(std::move(phi));
    }
    out.g = w;
    return out;
}

/// Complexified CR operator L_k = d/dz_k + eps_k d/dw on the jet registry.
inline MultiPoly cr_operator(const MultiPoly& p, int k, int n) {
    const auto& reg = p.registry();
    auto zk = static_cast<std::size_t>(k - 1);
    auto wv = static_cast<std::size_t>(n - 1);
    auto ek = static_cast<std::size_t>(n - 1 + k);
    return partial(p, zk) + MultiPoly::variable(reg, ek) * partial(p, wv);
}

/// Sets z = 0, w = 0 and keeps eps.
inline MultiPoly at_origin(const MultiPoly& p, int n) {
    std::map<std::size_t, MultiPoly> b;
    for (std::size_t v = 0; v < static_cast<std::size_t>(n); ++v) b.emplace(v, MultiPoly(p.registry()));
    return substitute(p, b);
}

inline std::vector<std::size_t> eps_vars(int n) {
    std::vector<std::size_t> v;
    for (int k = 1; k < n; ++k) v.push_back(static_cast<std::size_t>(n - 1 + k));
    return v;
}

/// E (N' x n') and e (N' x 1): E_lk = delta_q^k eps_p + delta_p^k eps_q, e_l = 2 eps_p eps_q.
inline std::pair<PolyMatrix, PolyMatrix> build_E_e(const IndexMap& im) {
    if (im.kappa0 != im.n - 1) throw UnsupportedRank("E and e need kappa0 = n-1");
    auto reg = jet_registry(im.n);
    const auto np = static_cast<std::size_t>(im.n_prime());
    auto eps = [&](int k) { return MultiPoly::variable(reg, static_cast<std::size_t>(im.n - 1 + k)); };
    PolyMatrix E(reg, im.N_prime(), np), e(reg, im.N_prime(), 1);
    for (std::size_t l = 0; l < im.N_prime(); ++l) {
        auto [p, q] = im.ell[l];
        for (int k = 1; k <= static_cast<int>(np); ++k) {
            MultiPoly v(reg);
            if (q == k) v += eps(p);
            if (p == k) v += eps(q);
            E.set(l, static_cast<std::size_t>(k - 1), v);
        }
        e.set(l, 0, GaussianRational(2) * eps(p) * eps(q));
    }
    return {E, e};
}

struct JetMatrices {
    IndexMap im;
    RegistryPtr reg;
    PolyMatrix E, e, A, B, C, D;
};

/// Applies the CR operators to the jet and evaluates at (0, 0).
inline JetMatrices build_matrices(const NormalizedJet& jet) {
    if (jet.kappa0 != jet.n - 1) throw UnsupportedRank("matrix pipeline needs kappa0 = n-1");
    JetPolys jp = jet_polynomials(jet);
    JetMatrices jm;
    jm.im = jet.index_map();
    jm.reg = jp.reg;
    std::tie(jm.E, jm.e) = build_E_e(jm.im);
    const int n = jet.n;
    const auto np = static_cast<std::size_t>(n - 1);
    const std::size_t Np = jm.im.N_prime();
    auto LL = [&](const MultiPoly& p, int j, int k) { return at_origin(cr_operator(cr_operator(p, k, n), j, n), n); };
    auto L = [&](const MultiPoly& p, int k) { return at_origin(cr_operator(p, k, n), n); };

    jm.A = PolyMatrix(jm.reg, Np, np);
    jm.B = PolyMatrix(jm.reg, Np, Np);
    for (std::size_t l = 0; l < Np; ++l) {
        auto [j, k] = jm.im.ell[l];
        for (std::size_t m = 0; m < np; ++m) jm.A.set(l, m, LL(jp.f[m], j, k));
        for (std::size_t c = 0; c < Np; ++c) jm.B.set(l, c, LL(jp.phi[c], j, k));
    }
    jm.C = PolyMatrix(jm.reg, np + Np, np + Np);
    jm.D = PolyMatrix(jm.reg, np + Np, 1);
    const GaussianRational half_over_i = GaussianRational(Rational(0), Rational(2)).inverse();
    for (std::size_t r = 0; r < np; ++r) {
        int k = static_cast<int>(r) + 1;
        for (std::size_t m = 0; m < np; ++m) jm.C.set(r, m, L(jp.f[m], k));
        for (std::size_t c = 0; c < Np; ++c) jm.C.set(r, np + c, L(jp.phi[c], k));
        jm.D.set(r, 0, half_over_i * L(jp.g, k));
    }
    for (std::size_t l = 0; l < Np; ++l) {
        auto [j, k] = jm.im.ell[l];
        for (std::size_t m = 0; m < np; ++m) jm.C.set(np + l, m, LL(jp.f[m], j, k));
        for (std::size_t c = 0; c < Np; ++c) jm.C.set(np + l, np + c, LL(jp.phi[c], j, k));
        jm.D.set(np + l, 0, half_over_i * LL(jp.g, j, k));
    }
    return jm;
}

/// Homogeneous part of degree d in eps of every entry.
inline PolyMatrix eps_part(const PolyMatrix& m, int d, int n) {
    auto vars = eps_vars(n);
    return m.map([&](const MultiPoly& p) { return homogeneous_part(p, d, vars); });
}

struct StructuralReport {
    bool sum_eps_E_is_e = false;
    bool B2_formula = false;        // B^{2} = e phi0^T
    bool B2_doubled_formula = false; // B^{2} = 2 e phi0^T, holds only when phi0 = 0
    bool B2_rank_le_1 = false;      // all 2x2 minors vanish
    bool B1_formula = false;        // B^{1} = sum_k E_k phi^(k)^T
    bool B12_in_span_E = false;     // every column of B^{1}, B^{2} in span of E's columns
    bool B0_diagonal = false;       // B^{0} = diag(lambda_{iota^{-1}(l)})
    bool A_columns = false;         // A_k = lambda_k E_k
    bool C_block_form = false;      // C = [[I, 0], [A, B]]
    bool D_formula = false;         // D = (1/2i) [eps; 0]
    bool constant_det_nonzero = false;
    GaussianRational constant_det;       // det B at eps = 0
    GaussianRational product_all_diag;   // prod over all N' diagonal entries of B^{0}
    GaussianRational product_first_np;   // prod over the first n' entries only
    bool constant_matches_all_diag = false;
    bool constant_matches_first_np = false;
    bool positive = false;  // constant term real and > 0 (meaningful in huang mode)

    bool all() const {
        return sum_eps_E_is_e && B2_formula && B2_rank_le_1 && B1_formula && B12_in_span_E && B0_diagonal &&
               A_columns && C_block_form && D_formula && constant_det_nonzero && constant_matches_all_diag;
    }
};

namespace detail {

// Exact vanishing of every (n'+1)-minor of [E | col].
inline bool in_column_span(const PolyMatrix& E, const PolyMatrix& col) {
    PolyMatrix M = PolyMatrix::hstack(E, col);
    const std::size_t r = E.cols() + 1;
    if (r > M.rows()) return true;
    std::vector<std::size_t> cols(M.cols());
    std::iota(cols.begin(), cols.end(), 0);
    return for_each_subset(M.rows(), r, [&](std::span<const std::size_t> rs) {
        return det(M.select(rs, cols)).is_zero();
    });
}

} // namespace detail

inline StructuralReport structural_identities(const NormalizedJet& jet, const JetMatrices& jm) {
    StructuralReport s;
    const int n = jet.n;
    const auto np = static_cast<std::size_t>(n - 1);
    const std::size_t Np = jm.im.N_prime();
    const auto& reg = jm.reg;
    auto eps = [&](std::size_t k) { return MultiPoly::variable(reg, static_cast<std::size_t>(n) + k); };

    PolyMatrix sum(reg, Np, 1);
    for (std::size_t k = 0; k < np; ++k) sum = sum + eps(k) * jm.E.column(k);
    s.sum_eps_E_is_e = sum == jm.e;

    PolyMatrix phi0(reg, Np, 1);
    std::vector<PolyMatrix> phik(np, PolyMatrix(reg, Np, 1));
    for (std::size_t l = 0; l < Np; ++l) {
        phi0.set(l, 0, MultiPoly(reg, jet.phi_w2[l]));
        for (std::size_t k = 0; k < np; ++k) phik[k].set(l, 0, MultiPoly(reg, jet.phi_lin[l][k]));
    }
    PolyMatrix B0 = eps_part(jm.B, 0, n), B1 = eps_part(jm.B, 1, n), B2 = eps_part(jm.B, 2, n);
    s.B2_formula = B2 == jm.e * phi0.transpose();
    s.B2_doubled_formula = B2 == GaussianRational(2) * (jm.e * phi0.transpose());
    s.B2_rank_le_1 = detail::for_each_subset(Np, 2, [&](std::span<const std::size_t> rs) {
        return detail::for_each_subset(Np, 2, [&](std::span<const std::size_t> cs) {
            return det(B2.select(rs, cs)).is_zero();
        });
    });
    PolyMatrix B1_expected(reg, Np, Np);
    for (std::size_t k = 0; k < np; ++k) B1_expected = B1_expected + jm.E.column(k) * phik[k].transpose();
    s.B1_formula = B1 == B1_expected;
    s.B12_in_span_E = true;
    for (std::size_t c = 0; c < Np && s.B12_in_span_E; ++c) {
        s.B12_in_span_E = detail::in_column_span(jm.E, B1.column(c)) && detail::in_column_span(jm.E, B2.column(c));
    }
    PolyMatrix B0_expected(reg, Np, Np);
    s.product_all_diag = GaussianRational(1);
    s.product_first_np = GaussianRational(1);
    for (std::size_t l = 0; l < Np; ++l) {
        auto [j, k] = jm.im.ell[l];
        GaussianRational lam = j == k ? GaussianRational(2) * jet.mu[l] : jet.mu[l];
        B0_expected.set(l, l, MultiPoly(reg, lam));
        s.product_all_diag *= lam;
        if (l < np) s.product_first_np *= lam;
    }
    s.B0_diagonal = B0 == B0_expected;
    s.A_columns = true;
    for (std::size_t k = 0; k < np; ++k) {
        s.A_columns = s.A_columns && jm.A.column(k) == jet.lambda[k] * jm.E.column(k);
    }
    PolyMatrix top = PolyMatrix::hstack(PolyMatrix::identity(reg, np), PolyMatrix(reg, np, Np));
    s.C_block_form = jm.C == PolyMatrix::vstack(top, PolyMatrix::hstack(jm.A, jm.B));
    PolyMatrix eps_col(reg, np + Np, 1);
    for (std::size_t k = 0; k < np; ++k) eps_col.set(k, 0, eps(k));
    s.D_formula = jm.D == GaussianRational(Rational(0), Rational(2)).inverse() * eps_col;

    s.constant_det = det(jm.B).constant_term();
    s.constant_det_nonzero = !s.constant_det.is_zero();
    s.constant_matches_all_diag = s.constant_det == s.product_all_diag;
    s.constant_matches_first_np = s.constant_det == s.product_first_np;
    s.positive = s.constant_det.is_real() && sgn(s.constant_det.re()) > 0;
    return s;
}

/// Constant matrix -2i d^2 f_l / dz_j dw at the origin.
inline PolyMatrix geometric_rank_matrix(const NormalizedJet& jet) {
    JetPolys jp = jet_polynomials(jet);
    const auto np = static_cast<std::size_t>(jet.n - 1);
    const std::size_t wv = np;
    PolyMatrix m(jp.reg, np, np);
    const GaussianRational factor(Rational(0), Rational(-2));
    for (std::size_t j = 0; j < np; ++j) {
        for (std::size_t l = 0; l < np; ++l) {
            MultiPoly d = at_origin(partial(partial(jp.f[l], j), wv), jet.n);
            if (!d.is_constant()) throw JetInvariantViolated("second derivative is not constant");
            m.set(j, l, factor * d);
        }
    }
    return m;
}

inline std::size_t geometric_rank(const NormalizedJet& jet) {
    PolyMatrix m = geometric_rank_matrix(jet);
    std::vector<GaussianRational> origin(m.registry()->size());
    return m.evaluate(origin).rank();
}

struct SegreRestriction {
    std::vector<MultiPoly> numerator;  // [det B * eps; -(adj B) A eps], length n' + N'
    MultiPoly denominator;             // det B
    bool g_component_zero = false;     // conj g(zeta, 0) = 0
    bool residual_zero = false;        // C * numerator = 2i det B * D
};

inline SegreRestriction segre_restriction(const JetMatrices& jm, const MultiPoly& detB, const PolyMatrix& adjB_A) {
    if (detB.is_zero()) throw SingularB("det B vanishes identically");
    const auto np = static_cast<std::size_t>(jm.im.n_prime());
    const std::size_t Np = jm.im.N_prime();
    const auto& reg = jm.reg;
    PolyMatrix eps(reg, np, 1);
    for (std::size_t k = 0; k < np; ++k) eps.set(k, 0, MultiPoly::variable(reg, np + 1 + k));
    PolyMatrix lower = GaussianRational(-1) * (adjB_A * eps);
    SegreRestriction s;
    s.denominator = detB;
    PolyMatrix x(reg, np + Np, 1);
    for (std::size_t k = 0; k < np; ++k) {
        s.numerator.push_back(detB * eps(k, 0));
        x.set(k, 0, s.numerator.back());
    }
    for (std::size_t l = 0; l < Np; ++l) {
        s.numerator.push_back(lower(l, 0));
        x.set(np + l, 0, lower(l, 0));
    }
    s.residual_zero = (jm.C * x == (GaussianRational(Rational(0), Rational(2)) * detB) * jm.D);
    // g = w in the normal form, so g(zeta, 0) = 0 before conjugation
    MultiPoly g = MultiPoly::variable(reg, np);
    s.g_component_zero = formal_conjugate(at_origin(g, jm.im.n)).is_zero();
    return s;
}

inline SegreRestriction segre_restriction(const JetMatrices& jm) {
    return segre_restriction(jm, det(jm.B), adjugate(jm.B) * jm.A);
}

// ----------------------------------------------------------------------------
// Case analysis

/// Entry of a multi-index: the homogeneous degree chosen for a column, or
/// kZeroColumn for the zero column.
inline constexpr int kZeroColumn = -1;

enum class CaseOutcome { vanishes, degree_bound };

struct RowPrediction {
    std::size_t row = 0;
    CaseOutcome outcome = CaseOutcome::degree_bound;
    int bound = 0;
    bool literal_vanishes = false;  // the proof's own claim for this row
    Degree actual;
    bool confirmed = false;
    bool literal_confirmed = false;
};

struct CaseReport {
    std::vector<int> I;
    int n_ge1 = 0, n2 = 0;
    int case_label = 0;
    // determinant proposition
    CaseOutcome det_outcome = CaseOutcome::degree_bound;
    int det_bound = 0;
    Degree det_actual;
    bool det_confirmed = false;
    // adjugate proposition, one entry per row of (adj B_I) A
    std::vector<RowPrediction> rows;
    bool adj_confirmed = false;
    bool adj_literal_confirmed = false;
    bool verified = false;
};

enum class Proposition { det_bound, adj_bound };

inline void count_index(const IndexMap& im, const std::vector<int>& I, CaseReport& r) {
    if (I.size() != im.N_prime()) {
        throw IndexLengthMismatch("multi-index has " + std::to_string(I.size()) + " entries, expected " +
                                  std::to_string(im.N_prime()));
    }
    for (int i : I) {
        if (i != kZeroColumn && (i < 0 || i > 2)) throw IndexOutOfRange("multi-index entry " + std::to_string(i));
    }
    r.I = I;
    r.n_ge1 = static_cast<int>(std::count_if(I.begin(), I.end(), [](int i) { return i >= 1; }));
    r.n2 = static_cast<int>(std::count(I.begin(), I.end(), 2));
}

/// Predictions of the two propositions' case analyses for B_I.
inline CaseReport case_classifier(const IndexMap& im, const std::vector<int>& I, Proposition which) {
    CaseReport r;
    count_index(im, I, r);
    const int n = im.n;
    const bool has_zero_col = std::count(I.begin(), I.end(), kZeroColumn) > 0;
    if (which == Proposition::det_bound) {
        if (r.n_ge1 >= n) {
            r.case_label = 1;
        } else if (r.n2 >= 2) {
            r.case_label = 2;
        } else {
            r.case_label = 3;
        }
        r.det_outcome = (r.case_label == 3 && !has_zero_col) ? CaseOutcome::degree_bound : CaseOutcome::vanishes;
        r.det_bound = r.n_ge1 + r.n2;
        return r;
    }
    r.case_label = r.n_ge1 >= n ? 1 : 2;
    for (std::size_t k = 0; k < I.size(); ++k) {
        RowPrediction p;
        p.row = k;
        const int ik = I[k];
        if (r.case_label == 1) {
            p.outcome = CaseOutcome::vanishes;
            p.literal_vanishes = true;
        } else if (ik <= 0) {
            // The proof claims these rows vanish. That needs the nonconstant
            // columns to span the same space as E, i.e. n_ge1 = n-1; with fewer
            // of them only the degree bound survives.
            p.literal_vanishes = true;
            if (r.n2 >= 2 || r.n_ge1 == n - 1) {
                p.outcome = CaseOutcome::vanishes;
            } else {
                p.outcome = CaseOutcome::degree_bound;
                p.bound = r.n_ge1 + r.n2 + 1;
            }
        } else if (r.n2 - ik >= 1) {
            p.outcome = CaseOutcome::vanishes;
            p.literal_vanishes = true;
        } else {
            p.outcome = CaseOutcome::degree_bound;
            p.bound = r.n_ge1 + r.n2 - ik + 1;
        }
        r.rows.push_back(p);
    }
    return r;
}

/// B_I: column l is the eps-degree I[l] part of column l of B, or zero.
inline PolyMatrix homogeneous_selection(const JetMatrices& jm, const std::vector<int>& I) {
    PolyMatrix out(jm.reg, jm.B.rows(), jm.B.cols());
    for (std::size_t c = 0; c < jm.B.cols(); ++c) {
        if (I[c] == kZeroColumn) continue;
        out = out.with_column(c, eps_part(jm.B.column(c), I[c], jm.im.n));
    }
    return out;
}

/// Classifies I and confirms the prediction symbolically.
inline CaseReport verify_case(const JetMatrices& jm, const std::vector<int>& I, Proposition which) {
    CaseReport r = case_classifier(jm.im, I, which);
    PolyMatrix M = homogeneous_selection(jm, I);
    const int n = jm.im.n;
    if (which == Proposition::det_bound) {
        r.det_actual = total_degree(det(M));
        r.det_confirmed = r.det_outcome == CaseOutcome::vanishes ? r.det_actual.is_zero_poly()
                                                                 : r.det_actual <= r.det_bound && r.det_actual <= n;
        r.verified = true;
        return r;
    }
    PolyMatrix P = adjugate(M) * jm.A;
    r.adj_confirmed = true;
    r.adj_literal_confirmed = true;
    for (auto& row : r.rows) {
        row.actual = Degree::zero_poly();
        for (std::size_t c = 0; c < P.cols(); ++c) row.actual = Degree::max(row.actual, total_degree(P(row.row, c)));
        row.confirmed = row.outcome == CaseOutcome::vanishes ? row.actual.is_zero_poly()
                                                             : row.actual <= row.bound && row.actual <= n;
        row.literal_confirmed = row.literal_vanishes ? row.actual.is_zero_poly() : row.confirmed;
        r.adj_confirmed = r.adj_confirmed && row.confirmed;
        r.adj_literal_confirmed = r.adj_literal_confirmed && row.literal_confirmed;
    }
    r.verified = true;
    return r;
}

/// Every multi-index with entries from `alphabet`, in lexicographic order.
inline std::vector<std::vector<int>> all_multi_indices(std::size_t length, const std::vector<int>& alphabet) {
    std::vector<std::vector<int>> out;
    std::vector<std::size_t> pos(length, 0);
    for (;;) {
        std::vector<int> I(length);
        for (std::size_t k = 0; k < length; ++k) I[k] = alphabet[pos[k]];
        out.push_back(std::move(I));
        std::size_t k = length;
        while (k > 0 && ++pos[k - 1] == alphabet.size()) pos[--k] = 0;
        if (k == 0) break;
    }
    return out;
}

// ----------------------------------------------------------------------------
// Verdict

struct DegreeVerdict {
    int n = 0;
    std::size_t N_prime = 0;
    Degree deg_detB, deg_adjB_A, deg_segre_numerator;
    bool detB_ok = false, adjB_A_ok = false, segre_ok = false;
    long weak_detB_bound = 0, weak_adjB_A_bound = 0;
    bool weak_detB_ok = false, weak_adjB_A_ok = false;
    GaussianRational detB_constant;
    bool detB_constant_nonzero = false;
    bool zeta_degrees_match = false;  // degrees unchanged by eps_k = 2i conj(zeta_k)
    bool residual_zero = false;
    bool g_component_zero = false;
    std::optional<std::vector<CaseReport>> case_log;

    bool bounds_hold() const {
        return detB_ok && adjB_A_ok && segre_ok && weak_detB_ok && weak_adjB_A_ok && detB_constant_nonzero &&
               residual_zero && g_component_zero && zeta_degrees_match;
    }
};

/// Rewrites eps_k = 2i zb_k into the registry (z, w, zb).
inline MultiPoly eps_to_zeta_bar(const MultiPoly& p, int n) {
    std::vector<VarRegistry::Var> vars;
    for (int k = 1; k < n; ++k) vars.push_back({"z" + std::to_string(k), VarRole::z});
    vars.push_back({"w", VarRole::w});
    for (int k = 1; k < n; ++k) vars.push_back({"zb" + std::to_string(k), VarRole::zeta});
    auto reg = VarRegistry::make(std::move(vars));
    std::map<std::size_t, MultiPoly> b;
    for (std::size_t v = 0; v < static_cast<std::size_t>(n); ++v) b.emplace(v, MultiPoly::variable(reg, v));
    for (int k = 1; k < n; ++k) {
        auto v = static_cast<std::size_t>(n - 1 + k);
        b.emplace(v, GaussianRational(Rational(0), Rational(2)) * MultiPoly::variable(reg, v));
    }
    return substitute(p, b);
}

struct VerdictOptions {
    bool case_log = false;
    DetOptions det;
};

inline DegreeVerdict degree_verdict(const NormalizedJet& jet, const VerdictOptions& opt = {}) {
    JetMatrices jm = build_matrices(jet);
    DegreeVerdict v;
    v.n = jet.n;
    v.N_prime = jm.im.N_prime();
    MultiPoly detB = det(jm.B, opt.det);
    PolyMatrix adjB_A = adjugate(jm.B, opt.det) * jm.A;
    v.deg_detB = total_degree(detB);
    v.deg_adjB_A = adjB_A.max_degree();
    SegreRestriction s = segre_restriction(jm, detB, adjB_A);
    v.deg_segre_numerator = Degree::zero_poly();
    bool zeta_ok = true;
    for (const auto& p : s.numerator) {
        v.deg_segre_numerator = Degree::max(v.deg_segre_numerator, total_degree(p));
        zeta_ok = zeta_ok && total_degree(eps_to_zeta_bar(p, jet.n)) == total_degree(p);
    }
    zeta_ok = zeta_ok && total_degree(eps_to_zeta_bar(detB, jet.n)) == v.deg_detB;
    v.zeta_degrees_match = zeta_ok;
    v.residual_zero = s.residual_zero;
    v.g_component_zero = s.g_component_zero;
    v.detB_ok = v.deg_detB <= jet.n;
    v.adjB_A_ok = v.deg_adjB_A <= jet.n;
    v.segre_ok = v.deg_segre_numerator <= jet.n + 1;
    v.weak_detB_bound = 1L << v.N_prime;
    v.weak_adjB_A_bound = (1L << (v.N_prime - 1)) + 1;
    v.weak_detB_ok = v.deg_detB <= static_cast<int>(v.weak_detB_bound);
    v.weak_adjB_A_ok = v.deg_adjB_A <= static_cast<int>(v.weak_adjB_A_bound);
    v.detB_constant = detB.constant_term();
    v.detB_constant_nonzero = !v.detB_constant.is_zero();
    if (opt.case_log) {
        std::vector<CaseReport> log;
        for (const auto& I : all_multi_indices(v.N_prime, {0, 1, 2})) log.push_back(verify_case(jm, I, Proposition::det_bound));
        v.case_log = std::move(log);
    }
    return v;
}

} // namespace crball
