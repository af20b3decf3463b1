#include <gtest/gtest.h>

#include "crball/crjet.hpp"
#include "crball/jet_sampling.hpp"

using namespace crball;

namespace {

// n = 2: lambda_1 = i, mu_11 = 1, phi^(1) = psi1, phi^(0) = psi0
NormalizedJet worked_jet(GaussianRational psi1 = GaussianRational(3), GaussianRational psi0 = GaussianRational(5)) {
    NormalizedJet j;
    j.n = 2;
    j.kappa0 = 1;
    j.lambda = {GaussianRational::i()};
    j.mu = {GaussianRational(1)};
    j.phi_lin = {{psi1}};
    j.phi_w2 = {psi0};
    return j;
}

NormalizedJet flat_jet(int n, Rng& rng) {
    NormalizedJet j = sample_jet(n, n - 1, JetMode::free, rng);
    for (auto& row : j.phi_lin) std::fill(row.begin(), row.end(), GaussianRational(0));
    std::fill(j.phi_w2.begin(), j.phi_w2.end(), GaussianRational(0));
    return j;
}

} // namespace

TEST(IndexMap, Examples) {
    auto a = IndexMap::build(2, 1);
    EXPECT_EQ(a.ell, (std::vector<std::pair<int, int>>{{1, 1}}));
    EXPECT_EQ(a.N_prime(), 1u);
    EXPECT_EQ(p_count(2, 1), 1);
    auto b = IndexMap::build(3, 2);
    EXPECT_EQ(b.ell, (std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 2}}));
    EXPECT_EQ(b.N, 6);
    EXPECT_EQ(IndexMap::build(4, 3).s0_size, 6u);
    EXPECT_THROW(IndexMap::build(3, 3), InvalidRank);
    EXPECT_THROW(IndexMap::build(3, -1), InvalidRank);
    EXPECT_THROW(IndexMap::build(3, 1, 3), DimensionMismatch);
}

TEST(IndexMap, BijectionAndSizes) {
    for (int n = 2; n <= 6; ++n) {
        for (int k0 = 0; k0 < n; ++k0) {
            auto im = IndexMap::build(n, k0);
            EXPECT_EQ(static_cast<int>(im.s0_size), p_count(n, k0));
            EXPECT_EQ(im.N, n + p_count(n, k0));
            for (std::size_t l = 0; l < im.N_prime(); ++l) {
                auto [j, k] = im.inverse(l);
                EXPECT_EQ(im.iota(j, k), l);
            }
        }
        EXPECT_EQ(static_cast<int>(IndexMap::build(n, n - 1).N_prime()), n * (n - 1) / 2);
    }
    auto s1 = IndexMap::build(4, 1, 8);
    EXPECT_EQ(s1.s0_size, 3u);
    EXPECT_EQ(s1.N_prime(), 4u);
    EXPECT_EQ(s1.inverse(3), (std::pair<int, int>{2, 2}));
}

TEST(CrJet, BuildEe) {
    auto [E, e] = build_E_e(IndexMap::build(2, 1));
    auto reg = E.registry();
    EXPECT_EQ(E(0, 0), parse_poly(reg, "2*eps1"));
    EXPECT_EQ(e(0, 0), parse_poly(reg, "2*eps1^2"));
    auto [E3, e3] = build_E_e(IndexMap::build(3, 2));
    auto r3 = E3.registry();
    EXPECT_EQ(E3(1, 0), parse_poly(r3, "eps2"));
    EXPECT_EQ(E3(1, 1), parse_poly(r3, "eps1"));
    EXPECT_EQ(e3(1, 0), parse_poly(r3, "2*eps1*eps2"));
    EXPECT_THROW(build_E_e(IndexMap::build(3, 1)), UnsupportedRank);
}

TEST(CrJet, WorkedJetMatrices) {
    auto jm = build_matrices(worked_jet());
    auto r = jm.reg;
    EXPECT_EQ(jm.B(0, 0), parse_poly(r, "2 + 6*eps1 + 10*eps1^2"));
    EXPECT_EQ(jm.A(0, 0), parse_poly(r, "2i*eps1"));
    EXPECT_EQ(jm.D(0, 0), parse_poly(r, "-1/2*i*eps1"));
    EXPECT_TRUE(jm.D(1, 0).is_zero());
}

TEST(CrJet, WorkedJetSegreAndVerdict) {
    auto jm = build_matrices(worked_jet());
    auto s = segre_restriction(jm);
    auto r = jm.reg;
    EXPECT_EQ(s.denominator, parse_poly(r, "2 + 6*eps1 + 10*eps1^2"));
    EXPECT_EQ(s.numerator[0], parse_poly(r, "(2 + 6*eps1 + 10*eps1^2)*eps1"));
    EXPECT_EQ(s.numerator[1], parse_poly(r, "-2i*eps1^2"));
    EXPECT_TRUE(s.residual_zero);
    EXPECT_TRUE(s.g_component_zero);
    auto v = degree_verdict(worked_jet());
    EXPECT_EQ(v.deg_detB, Degree(2));
    EXPECT_EQ(v.deg_adjB_A, Degree(1));
    EXPECT_EQ(v.deg_segre_numerator, Degree(3));
    EXPECT_TRUE(v.bounds_hold());
    EXPECT_EQ(v.weak_detB_bound, 2);
    EXPECT_EQ(v.weak_adjB_A_bound, 2);
}

TEST(CrJet, FlatJetIsDiagonal) {
    Rng rng(1);
    for (int n = 2; n <= 4; ++n) {
        auto jet = flat_jet(n, rng);
        auto jm = build_matrices(jet);
        auto s = structural_identities(jet, jm);
        EXPECT_TRUE(s.B0_diagonal);
        EXPECT_EQ(det(jm.B), MultiPoly(jm.reg, s.product_all_diag));
        auto v = degree_verdict(jet);
        EXPECT_EQ(v.deg_detB, Degree(0));
        EXPECT_EQ(v.deg_adjB_A, Degree(1));
        EXPECT_EQ(v.deg_segre_numerator, Degree(2));
    }
}

TEST(CrJet, SingularBThrows) {
    auto jm = build_matrices(worked_jet());
    EXPECT_THROW(segre_restriction(jm, MultiPoly(jm.reg), jm.A), SingularB);
}

TEST(CrJet, JetInvariants) {
    auto j = worked_jet();
    j.lambda[0] = GaussianRational(0);
    EXPECT_THROW(j.validate(), JetInvariantViolated);
    Rng rng(2);
    auto k = sample_jet(3, 1, JetMode::free, rng);
    k.lambda[1] = GaussianRational(1);
    EXPECT_THROW(k.validate(), JetInvariantViolated);
    auto h = sample_jet(3, 2, JetMode::huang, rng);
    EXPECT_NO_THROW(h.validate());
    h.mu[1] = h.mu[1] + GaussianRational(1);
    EXPECT_THROW(h.validate(), JetInvariantViolated);
    EXPECT_THROW(build_matrices(sample_jet(3, 1, JetMode::free, rng)), UnsupportedRank);
}

TEST(CrJet, HuangSamplingRelations) {
    Rng rng(3);
    for (int n = 2; n <= 4; ++n) {
        for (int t = 0; t < 20; ++t) {
            auto jet = sample_jet(n, n - 1, JetMode::huang, rng);
            auto jm = build_matrices(jet);
            auto s = structural_identities(jet, jm);
            EXPECT_TRUE(s.positive);
        }
    }
    EXPECT_THROW(sample_jet(5, 4, JetMode::huang, rng), UnsupportedRank);
}

TEST(CrJetProperty, StructuralIdentities) {
    Rng rng(4);
    for (int n = 2; n <= 5; ++n) {
        for (int t = 0; t < (n == 5 ? 2 : 10); ++t) {
            auto jet = sample_jet(n, n - 1, JetMode::free, rng);
            auto jm = build_matrices(jet);
            auto s = structural_identities(jet, jm);
            EXPECT_TRUE(s.all()) << "n=" << n;
        }
    }
}

TEST(CrJet, IotaPermutationInvariance) {
    // reversing iota permutes rows and columns of B, leaving det B unchanged
    Rng rng(5);
    auto jet = sample_jet(3, 2, JetMode::free, rng);
    auto jm = build_matrices(jet);
    std::vector<std::size_t> rev{2, 1, 0};
    EXPECT_EQ(det(jm.B.select(rev, rev)), det(jm.B));
}

TEST(GeometricRank, Examples) {
    Rng rng(6);
    auto lin = sample_jet(3, 0, JetMode::free, rng);
    EXPECT_TRUE(geometric_rank_matrix(lin).is_zero());
    EXPECT_EQ(geometric_rank(lin), 0u);

    NormalizedJet j = sample_jet(3, 2, JetMode::free, rng);
    j.lambda = {lambda_from_mu(Rational(1)), lambda_from_mu(Rational(2))};
    auto m = geometric_rank_matrix(j);
    EXPECT_EQ(m(0, 0), MultiPoly(m.registry(), 1));
    EXPECT_EQ(m(1, 1), MultiPoly(m.registry(), 2));
    EXPECT_TRUE(m(0, 1).is_zero());
    EXPECT_EQ(geometric_rank(j), 2u);

    NormalizedJet k = worked_jet();
    k.lambda = {lambda_from_mu(make_rational(3, 2))};
    EXPECT_EQ(geometric_rank_matrix(k)(0, 0), MultiPoly(geometric_rank_matrix(k).registry(), GaussianRational(make_rational(3, 2))));
}

TEST(CaseClassifier, DetExamples) {
    auto im = IndexMap::build(3, 2);
    auto a = case_classifier(im, {1, 1, 1}, Proposition::det_bound);
    EXPECT_EQ(a.case_label, 1);
    EXPECT_EQ(a.det_outcome, CaseOutcome::vanishes);
    auto b = case_classifier(im, {2, 2, 0}, Proposition::det_bound);
    EXPECT_EQ(b.case_label, 2);
    auto c = case_classifier(im, {2, 1, 0}, Proposition::det_bound);
    EXPECT_EQ(c.case_label, 3);
    EXPECT_EQ(c.det_bound, 3);
    EXPECT_THROW(case_classifier(im, {1, 1}, Proposition::det_bound), IndexLengthMismatch);

    Rng rng(7);
    auto jm = build_matrices(sample_jet(3, 2, JetMode::free, rng));
    EXPECT_TRUE(verify_case(jm, {1, 1, 1}, Proposition::det_bound).det_confirmed);
    EXPECT_TRUE(verify_case(jm, {2, 2, 0}, Proposition::det_bound).det_confirmed);
    auto v = verify_case(jm, {2, 1, 0}, Proposition::det_bound);
    EXPECT_TRUE(v.det_confirmed);
    EXPECT_LE(v.det_actual, 3);
}

TEST(CaseClassifier, ExhaustiveSmall) {
    Rng rng(8);
    for (int n = 2; n <= 3; ++n) {
        auto jm = build_matrices(sample_jet(n, n - 1, JetMode::free, rng));
        for (const auto& I : all_multi_indices(jm.im.N_prime(), {0, 1, 2})) {
            ASSERT_TRUE(verify_case(jm, I, Proposition::det_bound).det_confirmed);
        }
        for (const auto& I : all_multi_indices(jm.im.N_prime(), {kZeroColumn, 0, 1, 2})) {
            ASSERT_TRUE(verify_case(jm, I, Proposition::adj_bound).adj_confirmed);
        }
    }
}

TEST(CaseClassifier, LiteralRowClaimFailsWithFewNonconstantColumns) {
    // n = 3, I = (1, 0, 0): one nonconstant column, so row 2 of (adj B_I) A
    // does not vanish although i_2 = 0.
    Rng rng(9);
    auto jm = build_matrices(sample_jet(3, 2, JetMode::free, rng));
    auto r = verify_case(jm, {1, 0, 0}, Proposition::adj_bound);
    EXPECT_TRUE(r.adj_confirmed);
    EXPECT_FALSE(r.adj_literal_confirmed);
    EXPECT_LE(r.rows[1].actual, 3);
}

TEST(CrJetProperty, VerdictBoundsSmall) {
    Rng rng(10);
    for (int n = 2; n <= 3; ++n) {
        for (auto mode : {JetMode::free, JetMode::huang}) {
            for (int t = 0; t < 10; ++t) {
                auto v = degree_verdict(sample_jet(n, n - 1, mode, rng));
                ASSERT_TRUE(v.bounds_hold());
            }
        }
    }
}

TEST(CrJetProperty, MultilinearReassemblyOfB) {
    Rng rng(11);
    for (int n = 2; n <= 3; ++n) {
        auto jm = build_matrices(sample_jet(n, n - 1, JetMode::free, rng));
        auto ds = homogeneous_decomposition(jm.B, eps_vars(n), 2);
        MultiPoly sum(jm.reg);
        for (auto& t : det_multilinear_expansion(jm.B, ds)) sum += t.det;
        EXPECT_EQ(sum, det(jm.B));
    }
}

TEST(CrJet, AdditiveAdjugateOnB) {
    Rng rng(12);
    auto jm = build_matrices(sample_jet(3, 2, JetMode::free, rng));
    auto ds = homogeneous_decomposition(jm.B, eps_vars(3), 2);
    for (std::size_t c = 0; c < 3; ++c) EXPECT_TRUE(adjugate_additive_expansion(jm.B, ds[c]).holds);
}
