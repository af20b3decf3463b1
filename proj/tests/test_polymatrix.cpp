#include <gtest/gtest.h>

#include "crball/instances.hpp"
#include "crball/lemmas.hpp"
#include "crball/polymatrix.hpp"

using namespace crball;

namespace {

RegistryPtr reg3() {
    return VarRegistry::make({{"z1", VarRole::z}, {"z2", VarRole::z}, {"w", VarRole::w}});
}

MultiPoly P(const RegistryPtr& r, const char* s) { return parse_poly(r, s); }

PolyMatrix random_matrix(Rng& rng, const RegistryPtr& reg, std::size_t r, std::size_t c, int max_deg) {
    return random_poly_matrix(rng, reg, r, c, max_deg);
}

PolyMatrix scalar_times_identity(const MultiPoly& d, std::size_t n) {
    PolyMatrix m(d.registry(), n, n);
    for (std::size_t k = 0; k < n; ++k) m.set(k, k, d);
    return m;
}

} // namespace

TEST(PolyMatrix, DetExamples) {
    auto r = reg3();
    EXPECT_EQ(det(PolyMatrix::identity(r, 3)), MultiPoly(r, 1));
    auto m = PolyMatrix::from_rows(r, {{P(r, "z1"), P(r, "w")}, {P(r, "w"), P(r, "z1")}});
    for (auto b : {DetBackend::laplace, DetBackend::interpolation, DetBackend::leibniz}) {
        EXPECT_EQ(det(m, {b, 8}), P(r, "z1^2 - w^2"));
    }
    EXPECT_THROW(det(PolyMatrix(r, 2, 3)), NonSquare);
}

TEST(PolyMatrix, AdjugateExamples) {
    auto r = reg3();
    EXPECT_EQ(adjugate(PolyMatrix::identity(r, 3)), PolyMatrix::identity(r, 3));
    auto m = PolyMatrix::from_rows(r, {{P(r, "z1"), P(r, "z2")}, {P(r, "w"), P(r, "z1*w")}});
    auto expected = PolyMatrix::from_rows(r, {{P(r, "z1*w"), P(r, "-z2")}, {P(r, "-w"), P(r, "z1")}});
    EXPECT_EQ(adjugate(m), expected);
    EXPECT_EQ(adjugate(m, {DetBackend::interpolation, 0}), expected);
    EXPECT_EQ(adjugate(PolyMatrix::from_rows(r, {{P(r, "z1")}})), PolyMatrix::identity(r, 1));
}

TEST(PolyMatrix, Accessors) {
    auto r = reg3();
    Rng rng(3);
    auto m = random_matrix(rng, r, 4, 4, 2);
    EXPECT_EQ(m.submatrix(1, 2), m.drop_col(2).drop_row(1));
    auto two = PolyMatrix::from_rows(r, {{P(r, "z1"), P(r, "z2")}, {P(r, "w"), P(r, "1")}});
    EXPECT_EQ(two.submatrix(0, 0), PolyMatrix::from_rows(r, {{P(r, "1")}}));
    EXPECT_THROW(m.column(4), IndexOutOfRange);
    EXPECT_THROW(m.drop_row(9), IndexOutOfRange);
    EXPECT_THROW(m(4, 0), IndexOutOfRange);
    auto adj = adjugate(m);
    for (std::size_t j = 0; j < 4; ++j) {
        for (std::size_t k = 0; k < 4; ++k) {
            auto minor = det(m.submatrix(j, k), {DetBackend::leibniz, 0});
            EXPECT_EQ(adj(k, j), (j + k) % 2 == 0 ? minor : -minor);
        }
    }
}

TEST(PolyMatrix, DetMatchesEvaluation) {
    auto r = reg3();
    Rng rng(4);
    for (int t = 0; t < 100; ++t) {
        auto n = static_cast<std::size_t>(rng.uniform(1, 4));
        auto m = random_matrix(rng, r, n, n, 2);
        auto d = det(m);
        auto x = rng.gaussian_point(3);
        ASSERT_EQ(d.evaluate(x), m.evaluate(x).det());
    }
}

TEST(PolyMatrix, BackendsAgree) {
    auto r = reg3();
    Rng rng(5);
    for (int t = 0; t < 40; ++t) {
        auto n = static_cast<std::size_t>(rng.uniform(1, 5));
        auto m = random_matrix(rng, r, n, n, 2);
        auto d = det(m, {DetBackend::laplace, 8});
        ASSERT_EQ(d, det(m, {DetBackend::interpolation, 0}));
        ASSERT_EQ(d, det(m, {DetBackend::leibniz, 0}));
        if (n <= 4) {
            ASSERT_EQ(adjugate(m, {DetBackend::interpolation, 0}), adjugate(m));
        }
    }
}

TEST(PolyMatrix, LargeMatrixUsesInterpolation) {
    auto r = VarRegistry::make({{"x", VarRole::epsilon}});
    Rng rng(6);
    auto m = random_matrix(rng, r, 9, 9, 1);
    auto d = det(m);
    auto x = rng.gaussian_point(1);
    EXPECT_EQ(d.evaluate(x), m.evaluate(x).det());
    EXPECT_EQ(d, det(m, {DetBackend::laplace, 20}));
}

TEST(PolyMatrixProperty, AdjugateIdentity) {
    auto r = reg3();
    Rng rng(7);
    for (int t = 0; t < 60; ++t) {
        auto n = static_cast<std::size_t>(rng.uniform(1, 5));
        auto m = random_matrix(rng, r, n, n, 2);
        auto d = det(m);
        ASSERT_EQ(m * adjugate(m), scalar_times_identity(d, n));
        ASSERT_EQ(adjugate(m) * m, scalar_times_identity(d, n));
    }
}

TEST(PolyMatrixProperty, DegreeBoundByColumnDegrees) {
    auto r = reg3();
    Rng rng(8);
    for (int t = 0; t < 100; ++t) {
        auto n = static_cast<std::size_t>(rng.uniform(1, 4));
        auto m = random_matrix(rng, r, n, n, 2);
        Degree bound(0);
        bool zero_col = false;
        for (std::size_t c = 0; c < n; ++c) {
            auto cd = m.column_degree(c);
            if (cd.is_zero_poly()) {
                zero_col = true;
            } else {
                bound = bound + cd;
            }
        }
        auto d = total_degree(det(m));
        if (zero_col) {
            ASSERT_TRUE(d.is_zero_poly());
        } else {
            ASSERT_LE(d, bound);
        }
    }
}

TEST(ScalarMatrix, RankAndAdjugate) {
    ScalarMatrix m(3, 3);
    m(0, 0) = 1; m(0, 1) = 2; m(0, 2) = 3;
    m(1, 0) = 2; m(1, 1) = 4; m(1, 2) = 6;
    m(2, 0) = 1; m(2, 1) = 0; m(2, 2) = GaussianRational::i();
    EXPECT_EQ(m.rank(), 2u);
    EXPECT_TRUE(m.det().is_zero());
    auto adj = m.adjugate();
    EXPECT_EQ(m * adj, ScalarMatrix(3, 3));
    EXPECT_FALSE(adj == ScalarMatrix(3, 3));
}

TEST(Lemmas, MultilinearSingleton) {
    auto r = reg3();
    Rng rng(9);
    auto m = random_matrix(rng, r, 3, 3, 2);
    std::vector<ColumnDecomposition> ds;
    for (std::size_t c = 0; c < 3; ++c) ds.push_back(ColumnDecomposition::singleton(m, c));
    auto terms = det_multilinear_expansion(m, ds);
    ASSERT_EQ(terms.size(), 1u);
    EXPECT_EQ(terms[0].det, det(m));
}

TEST(Lemmas, MultilinearSplitColumn) {
    auto r = reg3();
    auto m = PolyMatrix::from_rows(r, {{P(r, "z1 + 1"), P(r, "w")}, {P(r, "z2"), P(r, "2")}});
    std::vector<ColumnDecomposition> ds{
        {0, {PolyMatrix::column_vector(r, {P(r, "z1"), P(r, "0")}), PolyMatrix::column_vector(r, {P(r, "1"), P(r, "z2")})}},
        ColumnDecomposition::singleton(m, 1)};
    auto terms = det_multilinear_expansion(m, ds);
    ASSERT_EQ(terms.size(), 2u);
    EXPECT_EQ(terms[0].det + terms[1].det, det(m));
    ds[0].parts[1] = PolyMatrix::column_vector(r, {P(r, "2"), P(r, "z2")});
    EXPECT_THROW(det_multilinear_expansion(m, ds), DecompositionMismatch);
}

TEST(LemmasProperty, MultilinearRandom) {
    auto r = reg3();
    Rng rng(10);
    for (int t = 0; t < 30; ++t) {
        auto n = static_cast<std::size_t>(rng.uniform(2, 4));
        auto m = random_matrix(rng, r, n, n, 2);
        std::vector<std::size_t> all{0, 1, 2};
        auto ds = homogeneous_decomposition(m, all, 2);
        MultiPoly sum(r);
        for (auto& term : det_multilinear_expansion(m, ds)) sum += term.det;
        ASSERT_EQ(sum, det(m));
    }
}

TEST(Lemmas, AdditiveAdjugateTrivialK) {
    auto r = reg3();
    Rng rng(11);
    auto m = random_matrix(rng, r, 3, 3, 1);
    auto rep = adjugate_additive_expansion(m, ColumnDecomposition::singleton(m, 1));
    EXPECT_TRUE(rep.holds);
}

TEST(LemmasProperty, AdditiveAdjugateRandom) {
    auto r = reg3();
    Rng rng(12);
    for (int t = 0; t < 100; ++t) {
        auto L = static_cast<std::size_t>(rng.uniform(2, 5));
        auto K = static_cast<std::size_t>(rng.uniform(1, 4));
        auto m = random_matrix(rng, r, L, L, 0);
        auto j = static_cast<std::size_t>(rng.uniform(0, static_cast<int64_t>(L) - 1));
        ColumnDecomposition d{j, {}};
        PolyMatrix rest = m.column(j);
        for (std::size_t k = 0; k + 1 < K; ++k) {
            auto part = random_matrix(rng, r, L, 1, 0);
            d.parts.push_back(part);
            rest = rest - part;
        }
        d.parts.push_back(rest);
        auto rep = adjugate_additive_expansion(m, d);
        ASSERT_TRUE(rep.holds);
        if (K > 1) {
            // a wrong correction coefficient must be caught
            auto corrupted = adjugate_additive_expansion(m, d, {DetBackend::leibniz, 0}, 1);
            bool correction_zero = adjugate(m.with_column(j, PolyMatrix(r, L, 1))).is_zero();
            ASSERT_EQ(corrupted.holds, correction_zero);
        }
    }
}

TEST(Lemmas, StructuredAdjugateExamples) {
    auto r = reg3();
    Rng rng(13);
    // L = 3, K = 1, U = e1, V = [1]
    auto U = PolyMatrix::column_vector(r, {P(r, "1"), P(r, "0"), P(r, "0")});
    auto V = PolyMatrix::from_rows(r, {{P(r, "1")}});
    auto T = random_matrix(rng, r, 3, 2, 0);
    auto rep = structured_adjugate_check(U, V, T, rng);
    EXPECT_TRUE(rep.part1_holds);
    EXPECT_TRUE(rep.rank.certified());

    // rank <= L - 2: adj M = 0
    auto U2 = PolyMatrix::column_vector(r, {P(r, "1"), P(r, "2"), P(r, "0"), P(r, "1")});
    auto V2 = PolyMatrix::from_rows(r, {{P(r, "3")}});
    PolyMatrix T2(r, 4, 3);
    for (std::size_t i = 0; i < 4; ++i) T2.set(i, 0, U2(i, 0));
    auto rep2 = structured_adjugate_check(U2, V2, T2, rng);
    EXPECT_LE(rep2.rank.rank, 2u);
    EXPECT_TRUE(adjugate(rep2.M).is_zero());
    EXPECT_TRUE(rep2.part1_holds);

    auto bad = PolyMatrix::from_rows(r, {{P(r, "1"), P(r, "2")}, {P(r, "2"), P(r, "4")}, {P(r, "0"), P(r, "0")}});
    EXPECT_THROW(structured_adjugate_check(bad, V2 * V2.transpose() + PolyMatrix::identity(r, 1), T, rng),
                 DimensionMismatch);
    auto Vok = PolyMatrix::identity(r, 2);
    EXPECT_THROW(structured_adjugate_check(bad, Vok, random_matrix(rng, r, 3, 1, 0), rng), RankPreconditionFailed);
}

TEST(Lemmas, StructuredAdjugateRankDeficient) {
    auto r = reg3();
    Rng rng(14);
    int applicable = 0;
    for (int t = 0; t < 20; ++t) {
        std::size_t L = 4, K = 2;
        auto U = random_matrix(rng, r, L, K, 0);
        auto V = random_matrix(rng, r, K, K, 0);
        auto T = random_matrix(rng, r, L, L - K, 0);
        // force rank L-1 by making the last T column a combination of U's columns
        auto c = U.column(0) + GaussianRational(2) * U.column(1);
        T = T.with_column(1, c);
        try {
            auto rep = structured_adjugate_check(U, V, T, rng);
            ASSERT_TRUE(rep.part1_holds);
            if (rep.part2_applicable) {
                ++applicable;
                ASSERT_TRUE(rep.part2_holds);
            }
        } catch (const RankPreconditionFailed&) {
        }
    }
    EXPECT_GT(applicable, 10);
}

TEST(Lemmas, CertifyRankPolynomial) {
    auto r = reg3();
    Rng rng(15);
    auto m = PolyMatrix::from_rows(r, {{P(r, "z1"), P(r, "z2"), P(r, "z1 + z2")},
                                       {P(r, "w"), P(r, "1"), P(r, "w + 1")},
                                       {P(r, "z1*w"), P(r, "z2*w"), P(r, "z1*w + z2*w")}});
    auto c = certify_rank(m, rng);
    EXPECT_EQ(c.rank, 2u);
    EXPECT_TRUE(c.certified());
    EXPECT_EQ(c.status(), "certified");
}
