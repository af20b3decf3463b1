#include <gtest/gtest.h>

#include <set>

#include "crball/ballmap.hpp"
#include "crball/catalog.hpp"

using namespace crball;

namespace {

RationalMap siegel_identity(int n) {
    std::vector<std::string> P;
    for (int k = 1; k < n; ++k) P.push_back("z" + std::to_string(k));
    P.push_back("w");
    return RationalMap::parse("identity", n, Side::siegel, P);
}

RationalMap ball_identity(int n) {
    std::vector<std::string> P;
    for (int k = 1; k <= n; ++k) P.push_back("z" + std::to_string(k));
    return RationalMap::parse("identity", n, Side::ball, P);
}

const RationalMap& entry(const std::string& name) { return find_catalog_entry(name)->map; }

} // namespace

TEST(Propriety, SiegelExamples) {
    EXPECT_TRUE(propriety_check_siegel(siegel_identity(2)).proper());
    EXPECT_TRUE(propriety_check_siegel(siegel_identity(4)).proper());
    auto emb = RationalMap::parse("embedding", 2, Side::siegel, {"z1", "0", "w"});
    EXPECT_TRUE(propriety_check_siegel(emb).proper());
    auto faran = cayley_conjugate(entry("faran_cubic_2_3"));
    EXPECT_TRUE(propriety_check_siegel(faran).proper());
    auto bad = RationalMap::parse("bad", 2, Side::siegel, {"2*z1", "w"});
    auto cert = propriety_check_siegel(bad);
    EXPECT_FALSE(cert.proper());
    EXPECT_THROW(cert.ensure("bad"), NotProper);
}

TEST(Propriety, SphereExamples) {
    auto id = propriety_check_sphere(ball_identity(2));
    EXPECT_TRUE(id.proper());
    ASSERT_TRUE(id.quotient);
    EXPECT_EQ(to_string(*id.quotient), "1");

    EXPECT_TRUE(propriety_check_sphere(entry("faran_cubic_2_3")).proper());
    auto broken = RationalMap::parse("broken", 2, Side::ball, {"z1", "z1"});
    auto cert = propriety_check_sphere(broken);
    EXPECT_FALSE(cert.proper());
    EXPECT_FALSE(cert.residual.is_zero());
    EXPECT_THROW(cert.ensure("broken"), NotProper);
}

TEST(Propriety, WrongSquaredScaleIsDetected) {
    auto f = RationalMap::parse("f", 2, Side::ball, {"z1^3", "z1*z2", "z2^3"}, "1", {Rational(1), Rational(2), Rational(1)});
    EXPECT_FALSE(propriety_check_sphere(f).proper());
}

TEST(Propriety, SphereQuotientReconstructs) {
    for (const auto& e : catalog()) {
        const auto& F = e.map;
        auto cert = propriety_check_sphere(F);
        ASSERT_TRUE(cert.proper()) << F.name;
        RegistryPtr reg = complexified_ball_registry(F.n);
        MultiPoly lhs(reg);
        for (std::size_t j = 0; j < F.P.size(); ++j) {
            MultiPoly p = detail::rebind(F.P[j], reg);
            lhs += GaussianRational(F.scale(j)) * p * formal_conjugate(p);
        }
        MultiPoly q = detail::rebind(F.Q, reg);
        lhs -= q * formal_conjugate(q);
        MultiPoly div(reg, GaussianRational(-1));
        for (int k = 0; k < F.n; ++k) {
            div += MultiPoly::variable(reg, static_cast<std::size_t>(k)) * MultiPoly::variable(reg, static_cast<std::size_t>(F.n + k));
        }
        EXPECT_EQ(lhs, *cert.quotient * div) << F.name;
    }
}

TEST(Map, ValidationErrors) {
    EXPECT_THROW(RationalMap::parse("x", 2, Side::ball, {"z1", "z2"}, "0"), DivisionByZero);
    EXPECT_THROW(RationalMap::parse("x", 2, Side::ball, {"z1", "z2"}, "1", {Rational(2), Rational(1), Rational(1)}),
                 DimensionMismatch);
    EXPECT_THROW(RationalMap::parse("x", 2, Side::ball, {"z1", "z2"}, "1", {Rational(1), Rational(2)}), DimensionMismatch);
    EXPECT_THROW(RationalMap::parse("x", 2, Side::ball, {"w", "z2"}), UnknownVariable);
}

TEST(Degree, Examples) {
    Rng rng(1);
    EXPECT_EQ(degree(entry("linear_2_3"), rng).degree, 1);
    EXPECT_EQ(degree(entry("faran_cubic_2_3"), rng).degree, 3);
    auto w = degree(entry("whitney_2_3"), rng);
    EXPECT_EQ(w.degree, 2);
    EXPECT_TRUE(w.probably_reduced());
    EXPECT_EQ(w.label(), "probably reduced");
}

TEST(Degree, CommonFactorDetected) {
    Rng rng(2);
    auto f = RationalMap::parse("f", 2, Side::ball, {"z1*(1+z2)", "z2*(1+z2)"}, "1+z2");
    auto rep = degree(f, rng);
    EXPECT_EQ(rep.degree, 2);
    EXPECT_FALSE(rep.probably_reduced());
    EXPECT_EQ(rep.label(), "common factor detected");
}

TEST(Cayley, IdentityAndEmbedding) {
    for (int n = 2; n <= 4; ++n) {
        EXPECT_TRUE(same_map(cayley_conjugate(ball_identity(n)), siegel_identity(n)));
        EXPECT_TRUE(same_map(cayley_conjugate(siegel_identity(n)), ball_identity(n)));
    }
    auto emb = RationalMap::parse("embedding", 2, Side::siegel, {"z1", "0", "w"});
    EXPECT_TRUE(same_map(cayley_conjugate(entry("linear_2_3")), emb));
    EXPECT_TRUE(same_map(cayley_conjugate(emb), entry("linear_2_3")));
}

TEST(Cayley, BoundaryIdentity) {
    for (int n = 2; n <= 5; ++n) EXPECT_TRUE(cayley_boundary_identity(n));
}

TEST(Cayley, CatalogRoundTripAndPropriety) {
    Rng rng(3);
    for (const auto& e : catalog()) {
        auto S = cayley_conjugate(e.map);
        EXPECT_TRUE(propriety_check_siegel(S).proper()) << e.map.name;
        EXPECT_EQ(degree(S, rng).degree, e.expected_degree) << e.map.name;
        std::vector<GaussianRational> origin(static_cast<std::size_t>(e.map.n));
        for (const auto& p : S.P) EXPECT_TRUE(p.evaluate(origin).is_zero()) << e.map.name;
        EXPECT_TRUE(same_map(cayley_conjugate(S), e.map)) << e.map.name;
    }
}

TEST(Translate, Examples) {
    auto id = siegel_identity(2);
    BoundaryPoint zero{{GaussianRational(0)}, GaussianRational(0)};
    EXPECT_TRUE(same_map(translate_to_point(id, zero), id));

    BoundaryPoint p{{GaussianRational(1)}, GaussianRational::i()};
    auto Fp = translate_to_point(id, p);
    std::vector<GaussianRational> origin(2);
    for (const auto& c : Fp.P) EXPECT_TRUE(c.evaluate(origin).is_zero());
    EXPECT_TRUE(sigma_maps_segre(2, p));

    BoundaryPoint off{{GaussianRational(1)}, GaussianRational(Rational(0), Rational(2))};
    EXPECT_THROW(translate_to_point(id, off), PointNotOnBoundary);
}

TEST(Translate, PreservesProprietyOnCatalog) {
    Rng rng(4);
    for (const auto& e : catalog()) {
        auto S = cayley_conjugate(e.map);
        for (int t = 0; t < 3; ++t) {
            auto p = random_boundary_point(e.map.n, rng);
            ASSERT_TRUE(p.on_boundary());
            EXPECT_TRUE(sigma_maps_segre(e.map.n, p));
            if (S.Q.evaluate(p.coords()).is_zero()) continue;
            auto Fp = translate_to_point(S, p);
            EXPECT_TRUE(propriety_check_siegel(Fp).proper()) << e.map.name;
            std::vector<GaussianRational> origin(static_cast<std::size_t>(e.map.n));
            for (const auto& c : Fp.P) EXPECT_TRUE(c.evaluate(origin).is_zero()) << e.map.name;
        }
    }
}

TEST(Segre, Examples) {
    auto r = segre_restrict(siegel_identity(2), {{GaussianRational(0)}, GaussianRational(0)});
    EXPECT_EQ(r.degree, 1);
    EXPECT_EQ(r.P[0], MultiPoly::variable(r.Q.registry(), 0));
    EXPECT_TRUE(r.P[1].is_zero());

    auto W = cayley_conjugate(entry("whitney_2_3"));
    EXPECT_LE(segre_restrict(W, {{GaussianRational(0)}, GaussianRational(0)}).degree, 2);
}

TEST(Segre, SweepNeverExceedsDegreeAndAttainsIt) {
    Rng rng(5);
    for (const auto& e : catalog()) {
        auto S = cayley_conjugate(e.map);
        int best = 0;
        for (int t = 0; t < 10; ++t) {
            auto p = random_boundary_point(e.map.n, rng);
            int d = segre_restrict(S, {p.z0, p.w0}).degree;
            EXPECT_LE(d, e.expected_degree) << e.map.name;
            best = std::max(best, d);
        }
        EXPECT_EQ(best, e.expected_degree) << e.map.name;
    }
}

TEST(Catalog, Regression) {
    ASSERT_EQ(catalog().size(), 7u);
    Rng rng(6);
    std::multiset<int> family;
    for (const auto& e : catalog()) {
        EXPECT_TRUE(propriety_check(e.map).proper()) << e.map.name;
        int d = degree(e.map, rng).degree;
        EXPECT_EQ(d, e.expected_degree) << e.map.name;
        if (e.faran) family.insert(d);
    }
    EXPECT_EQ(family, (std::multiset<int>{1, 2, 2, 3}));
    EXPECT_EQ(*family.rbegin(), 1 + 2);
}
