#pragma once

// Random polynomial matrices and lemma instances shared by the suites and
// the tests.

#include <cstdint>

#include "lemmas.hpp"
#include "random.hpp"

namespace crball {

/// Registry z1, z2, w used by the lemma suites.
inline RegistryPtr lemma_registry() {
    static const RegistryPtr reg = VarRegistry::make({{"z1", VarRole::z}, {"z2", VarRole::z}, {"w", VarRole::w}});
    return reg;
}

/// Up to max_terms terms of degree <= max_deg with small Gaussian coefficients.
inline MultiPoly random_poly(Rng& rng, const RegistryPtr& reg, int max_deg, int max_terms = 3) {
    std::vector<MultiPoly::Term> ts;
    auto n = rng.uniform(0, max_terms);
    for (std::int64_t t = 0; t < n; ++t) {
        Exponents e(reg->size(), 0);
        auto d = rng.uniform(0, max_deg);
        for (std::int64_t k = 0; k < d; ++k) ++e[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(reg->size()) - 1))];
        ts.emplace_back(std::move(e), rng.gaussian(4, 2));
    }
    return MultiPoly::from_terms(reg, std::move(ts));
}

inline PolyMatrix random_poly_matrix(Rng& rng, const RegistryPtr& reg, std::size_t r, std::size_t c, int max_deg) {
    PolyMatrix m(reg, r, c);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < c; ++j) m.set(i, j, random_poly(rng, reg, max_deg));
    }
    return m;
}

struct AdditiveInstance {
    PolyMatrix M;
    ColumnDecomposition decomp;
};

/// L in 2..5, K in 1..4; one column split into K random parts.
inline AdditiveInstance random_additive_instance(Rng& rng, const RegistryPtr& reg, int max_deg = 1) {
    auto L = static_cast<std::size_t>(rng.uniform(2, 5));
    auto K = static_cast<std::size_t>(rng.uniform(1, 4));
    AdditiveInstance a{random_poly_matrix(rng, reg, L, L, max_deg), {}};
    a.decomp.column = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(L) - 1));
    PolyMatrix rest = a.M.column(a.decomp.column);
    for (std::size_t k = 0; k + 1 < K; ++k) {
        auto part = random_poly_matrix(rng, reg, L, 1, max_deg);
        a.decomp.parts.push_back(part);
        rest = rest - part;
    }
    a.decomp.parts.push_back(rest);
    return a;
}

/// L in 2..4, every column split into 1..3 random parts.
inline std::pair<PolyMatrix, std::vector<ColumnDecomposition>> random_multilinear_instance(Rng& rng, const RegistryPtr& reg,
                                                                                          int max_deg = 1) {
    auto L = static_cast<std::size_t>(rng.uniform(2, 4));
    PolyMatrix m = random_poly_matrix(rng, reg, L, L, max_deg);
    std::vector<ColumnDecomposition> ds;
    for (std::size_t c = 0; c < L; ++c) {
        ColumnDecomposition d{c, {}};
        PolyMatrix rest = m.column(c);
        auto K = rng.uniform(1, 3);
        for (std::int64_t k = 0; k + 1 < K; ++k) {
            auto part = random_poly_matrix(rng, reg, L, 1, max_deg);
            d.parts.push_back(part);
            rest = rest - part;
        }
        d.parts.push_back(rest);
        ds.push_back(std::move(d));
    }
    return {std::move(m), std::move(ds)};
}

struct StructuredInstance {
    PolyMatrix U, V, T;
};

/// L in 2..5, 0 < K < L. With corank_one the last column of T is a random
/// combination of the columns of U, so rank [U V^T | T] <= L - 1.
inline StructuredInstance random_structured_instance(Rng& rng, const RegistryPtr& reg, bool corank_one, int max_deg = 1) {
    auto L = static_cast<std::size_t>(rng.uniform(2, 5));
    auto K = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(L) - 1));
    StructuredInstance s{random_poly_matrix(rng, reg, L, K, max_deg), random_poly_matrix(rng, reg, K, K, max_deg),
                         random_poly_matrix(rng, reg, L, L - K, max_deg)};
    if (corank_one) {
        PolyMatrix c(reg, L, 1);
        for (std::size_t k = 0; k < K; ++k) c = c + rng.nonzero_gaussian(4, 2) * s.U.column(k);
        s.T = s.T.with_column(L - K - 1, c);
    }
    return s;
}

} // namespace crball
