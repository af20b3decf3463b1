#pragma once

// The determinant/adjugate identities used by the degree argument, each
// returned as a report whose two sides come from independent code paths.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "polymatrix.hpp"
#include "random.hpp"

namespace crball {

/// Column `column` of `matrix` written as a sum of column vectors.
struct ColumnDecomposition {
    std::size_t column = 0;
    std::vector<PolyMatrix> parts;  // each rows x 1

    /// Throws DecompositionMismatch unless the parts sum to the column.
    void validate(const PolyMatrix& matrix) const {
        if (column >= matrix.cols()) throw IndexOutOfRange("decomposed column " + std::to_string(column));
        if (parts.empty()) throw DecompositionMismatch("no parts for column " + std::to_string(column));
        PolyMatrix sum(matrix.registry(), matrix.rows(), 1);
        for (const auto& p : parts) {
            if (p.rows() != matrix.rows() || p.cols() != 1) throw DecompositionMismatch("part is not a column");
            sum = sum + p;
        }
        if (!(sum == matrix.column(column))) {
            throw DecompositionMismatch("parts do not sum to column " + std::to_string(column));
        }
    }

    static ColumnDecomposition singleton(const PolyMatrix& m, std::size_t column) {
        return {column, {m.column(column)}};
    }
};

/// Splits every column into homogeneous parts of degree 0..max_degree in `vars`.
inline std::vector<ColumnDecomposition> homogeneous_decomposition(const PolyMatrix& m,
                                                                  std::span<const std::size_t> vars,
                                                                  int max_degree) {
    std::vector<ColumnDecomposition> out;
    for (std::size_t c = 0; c < m.cols(); ++c) {
        ColumnDecomposition d{c, {}};
        PolyMatrix col = m.column(c);
        for (int k = 0; k <= max_degree; ++k) {
            d.parts.push_back(col.map([&](const MultiPoly& p) { return homogeneous_part(p, k, vars); }));
        }
        out.push_back(std::move(d));
    }
    return out;
}

struct ExpansionTerm {
    std::vector<std::size_t> index;  // chosen part per column
    PolyMatrix matrix;
    MultiPoly det;
};

/// Expands det M over every choice of one part per column. `decomps` must
/// decompose each column exactly once, in column order.
inline std::vector<ExpansionTerm> det_multilinear_expansion(const PolyMatrix& m,
                                                            const std::vector<ColumnDecomposition>& decomps,
                                                            const DetOptions& opt = {}) {
    detail::require_square(m);
    if (decomps.size() != m.cols()) throw DecompositionMismatch("one decomposition per column required");
    for (std::size_t c = 0; c < decomps.size(); ++c) {
        if (decomps[c].column != c) throw DecompositionMismatch("decompositions out of column order");
        decomps[c].validate(m);
    }
    std::vector<ExpansionTerm> out;
    std::vector<std::size_t> idx(m.cols(), 0);
    for (;;) {
        PolyMatrix b = m;
        for (std::size_t c = 0; c < m.cols(); ++c) b = b.with_column(c, decomps[c].parts[idx[c]]);
        MultiPoly d = det(b, opt);
        out.push_back({idx, std::move(b), std::move(d)});
        std::size_t c = 0;
        while (c < idx.size() && ++idx[c] == decomps[c].parts.size()) idx[c++] = 0;
        if (c == idx.size()) break;
    }
    return out;
}

struct AdditiveAdjugateReport {
    PolyMatrix lhs;  // adj M
    PolyMatrix rhs;  // sum_k adj(M with part k) - (K - 1) adj(M with zero column)
    bool holds = false;
};

/// Both sides of the additive adjugate identity. The left side uses the
/// default adjugate backend; every adjugate on the right side, including the
/// zero-column correction term, is built entry by entry from cofactors
/// evaluated with `oracle`.
inline AdditiveAdjugateReport adjugate_additive_expansion(const PolyMatrix& m, const ColumnDecomposition& decomp,
                                                          const DetOptions& oracle = {DetBackend::leibniz, 0},
                                                          long correction_offset = 0) {
    detail::require_square(m);
    decomp.validate(m);
    const auto K = static_cast<long>(decomp.parts.size());
    AdditiveAdjugateReport r{adjugate(m), PolyMatrix(m.registry(), m.rows(), m.cols()), false};
    for (const auto& part : decomp.parts) {
        r.rhs = r.rhs + adjugate_by_cofactors(m.with_column(decomp.column, part), oracle);
    }
    PolyMatrix zero_col(m.registry(), m.rows(), 1);
    PolyMatrix correction = adjugate_by_cofactors(m.with_column(decomp.column, zero_col), oracle);
    r.rhs = r.rhs - GaussianRational(K - 1 + correction_offset) * correction;
    r.holds = r.lhs == r.rhs;
    return r;
}

struct RankCertificate {
    std::size_t rank = 0;
    bool lower_certified = false;  // exact nonzero minor of size `rank` found
    bool upper_certified = false;  // all minors of size rank+1 vanish exactly
    std::vector<std::size_t> minor_rows, minor_cols;

    bool certified() const { return lower_certified && upper_certified; }
    std::string status() const { return certified() ? "certified" : "probabilistic"; }
};

namespace detail {

inline bool all_constant(const PolyMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (!m(i, j).is_constant()) return false;
        }
    }
    return true;
}

// Calls f on every k-subset of {0..n-1} in lexicographic order until f returns false.
template <class F>
bool for_each_subset(std::size_t n, std::size_t k, F&& f) {
    if (k > n) return true;
    std::vector<std::size_t> s(k);
    std::iota(s.begin(), s.end(), 0);
    for (;;) {
        if (!f(std::span<const std::size_t>(s))) return false;
        std::size_t i = k;
        while (i > 0 && s[i - 1] == n - k + i - 1) --i;
        if (i == 0) return true;
        ++s[i - 1];
        for (std::size_t j = i; j < k; ++j) s[j] = s[j - 1] + 1;
    }
}

} // namespace detail

/// Rank of a polynomial matrix. The numeric rank at `points` random
/// evaluations is a lower bound, confirmed by an exact nonzero minor; the
/// upper bound is confirmed by exact vanishing of all larger minors when the
/// matrix has at most `exhaustive_max` rows and columns.
inline RankCertificate certify_rank(const PolyMatrix& m, Rng& rng, std::size_t points = 3,
                                    std::size_t exhaustive_max = 6) {
    RankCertificate cert;
    if (detail::all_constant(m)) {
        std::vector<GaussianRational> origin(m.registry()->size());
        auto elim = m.evaluate(origin).eliminate();
        cert.rank = elim.rank;
        cert.minor_rows = elim.pivot_rows;
        cert.minor_cols = elim.pivot_cols;
        std::sort(cert.minor_rows.begin(), cert.minor_rows.end());
        cert.lower_certified = cert.upper_certified = true;
        return cert;
    }
    ScalarMatrix::Elimination best;
    for (std::size_t k = 0; k < points; ++k) {
        auto elim = m.evaluate(rng.gaussian_point(m.registry()->size())).eliminate();
        if (k == 0 || elim.rank > best.rank) best = elim;
    }
    cert.rank = best.rank;
    cert.minor_rows = best.pivot_rows;
    cert.minor_cols = best.pivot_cols;
    std::sort(cert.minor_rows.begin(), cert.minor_rows.end());
    cert.lower_certified = cert.rank == 0 || !det(m.select(cert.minor_rows, cert.minor_cols)).is_zero();
    const std::size_t r = cert.rank + 1;
    if (r > std::min(m.rows(), m.cols())) {
        cert.upper_certified = true;
    } else if (std::max(m.rows(), m.cols()) <= exhaustive_max) {
        cert.upper_certified = detail::for_each_subset(m.rows(), r, [&](std::span<const std::size_t> rs) {
            return detail::for_each_subset(m.cols(), r, [&](std::span<const std::size_t> cs) {
                return det(m.select(rs, cs)).is_zero();
            });
        });
    }
    return cert;
}

struct StructuredAdjugateReport {
    std::size_t L = 0, K = 0;
    PolyMatrix M;
    PolyMatrix adjM_U;
    bool part1_holds = false;  // rows K..L-1 of (adj M) U vanish
    RankCertificate rank;
    bool part2_applicable = false;  // rank M = L-1, certified
    bool part2_holds = false;       // (adj M) U = 0
};

/// Builds M = [U V^T | T] and checks both parts of the structured adjugate
/// lemma. Throws RankPreconditionFailed if U or V has dependent columns.
inline StructuredAdjugateReport structured_adjugate_check(const PolyMatrix& U, const PolyMatrix& V,
                                                          const PolyMatrix& T, Rng& rng) {
    const std::size_t L = U.rows(), K = U.cols();
    if (!(0 < K && K < L)) throw DimensionMismatch("need 0 < K < L");
    if (V.rows() != K || V.cols() != K) throw DimensionMismatch("V must be K x K");
    if (T.rows() != L || T.cols() != L - K) throw DimensionMismatch("T must be L x (L-K)");
    auto ru = certify_rank(U, rng), rv = certify_rank(V, rng);
    if (ru.rank != K || !ru.lower_certified) throw RankPreconditionFailed("columns of U are dependent");
    if (rv.rank != K || !rv.lower_certified) throw RankPreconditionFailed("columns of V are dependent");

    StructuredAdjugateReport r;
    r.L = L;
    r.K = K;
    r.M = PolyMatrix::hstack(U * V.transpose(), T);
    r.adjM_U = adjugate(r.M) * U;
    r.part1_holds = true;
    for (std::size_t j = K; j < L; ++j) {
        for (std::size_t k = 0; k < K; ++k) r.part1_holds = r.part1_holds && r.adjM_U(j, k).is_zero();
    }
    r.rank = certify_rank(r.M, rng);
    r.part2_applicable = r.rank.certified() && r.rank.rank + 1 == L;
    if (r.part2_applicable) r.part2_holds = r.adjM_U.is_zero();
    return r;
}

} // namespace crball
