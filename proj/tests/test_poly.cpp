#include <gtest/gtest.h>

#include "crball/poly.hpp"
#include "crball/random.hpp"

using namespace crball;

namespace {

RegistryPtr zw_reg() {
    return VarRegistry::make({{"z1", VarRole::z}, {"z2", VarRole::z}, {"w", VarRole::w},
                              {"zeta1", VarRole::zeta}, {"zeta2", VarRole::zeta}, {"eta", VarRole::eta},
                              {"eps1", VarRole::epsilon}, {"mu", VarRole::z}});
}

MultiPoly P(const RegistryPtr& r, const char* s) { return parse_poly(r, s); }

MultiPoly random_poly(Rng& rng, const RegistryPtr& reg, std::size_t nvars, int max_deg, int terms) {
    std::vector<MultiPoly::Term> ts;
    for (int t = 0; t < terms; ++t) {
        Exponents e(reg->size(), 0);
        int budget = static_cast<int>(rng.uniform(0, max_deg));
        for (int k = 0; k < budget; ++k) ++e[static_cast<std::size_t>(rng.uniform(0, static_cast<int64_t>(nvars) - 1))];
        ts.emplace_back(std::move(e), rng.gaussian(5, 3));
    }
    return MultiPoly::from_terms(reg, std::move(ts));
}

} // namespace

TEST(Poly, RingOps) {
    auto r = zw_reg();
    EXPECT_EQ(ring_ops(P(r, "z1 + w"), P(r, "z1 - w"), RingOp::mul), P(r, "z1^2 - w^2"));
    auto p = P(r, "3*z1*w - 2i*z2 + 1/2");
    EXPECT_EQ(ring_ops(p, MultiPoly(r), RingOp::add), p);
    EXPECT_EQ(ring_ops(P(r, "2i*eps1"), P(r, "2i*eps1"), RingOp::mul), P(r, "-4*eps1^2"));
}

TEST(Poly, RegistryMismatchThrows) {
    auto a = zw_reg();
    auto b = VarRegistry::make({{"x", VarRole::z}});
    EXPECT_THROW(MultiPoly::variable(a, 0) + MultiPoly::variable(b, 0), RegistryMismatch);
    EXPECT_THROW(VarRegistry::make({{"x", VarRole::z}, {"x", VarRole::w}}), RegistryMismatch);
}

TEST(Poly, ContentEqualRegistriesInteroperate) {
    auto a = zw_reg(), b = zw_reg();
    EXPECT_EQ(MultiPoly::variable(a, 0) + MultiPoly::variable(b, 0), P(a, "2*z1"));
}

TEST(Poly, Partial) {
    auto r = zw_reg();
    EXPECT_EQ(partial(P(r, "z1*w"), "w"), P(r, "z1"));
    EXPECT_TRUE(partial(P(r, "z1^2"), "w").is_zero());
    EXPECT_EQ(partial(P(r, "mu*z1*z2"), "z1"), P(r, "mu*z2"));
    EXPECT_THROW(partial(P(r, "z1"), "nope"), UnknownVariable);
}

TEST(Poly, SubstituteSegre) {
    auto r = zw_reg();
    std::map<std::string, MultiPoly> b{{"w", P(r, "eta + 2i*z1*zeta1")}};
    EXPECT_EQ(substitute(P(r, "w"), b), P(r, "eta + 2i*z1*zeta1"));
    EXPECT_EQ(substitute(P(r, "z1"), std::map<std::string, MultiPoly>{}), P(r, "z1"));
    std::map<std::string, MultiPoly> e{{"eps1", P(r, "2i*zeta1")}};
    EXPECT_EQ(substitute(P(r, "eps1^2"), e), P(r, "-4*zeta1^2"));
}

TEST(Poly, SubstituteAcrossRegistries) {
    auto big = zw_reg();
    auto small = VarRegistry::make({{"t", VarRole::z}});
    std::map<std::size_t, MultiPoly> b{{0, P(small, "t + 1")}, {2, P(small, "2*t")}};
    EXPECT_EQ(substitute(P(big, "z1*w"), b), P(small, "2*t^2 + 2*t"));
    EXPECT_THROW(substitute(P(big, "z1*z2"), b), RegistryMismatch);
}

TEST(Poly, HomogeneousParts) {
    auto r = zw_reg();
    std::vector<std::size_t> eps{r->index("eps1")};
    auto p = P(r, "2*mu + eps1*z1 + eps1^2*z2");
    EXPECT_EQ(homogeneous_part(p, 1, eps), P(r, "eps1*z1"));
    EXPECT_TRUE(homogeneous_part(p, 7).is_zero());
    MultiPoly sum(r);
    for (int d = 0; d <= 2; ++d) sum += homogeneous_part(p, d, eps);
    EXPECT_EQ(sum, p);
}

TEST(Poly, TotalDegree) {
    auto r = zw_reg();
    EXPECT_EQ(total_degree(P(r, "z1^2*w")), Degree(3));
    EXPECT_TRUE(total_degree(MultiPoly(r)).is_zero_poly());
    EXPECT_LT(Degree::zero_poly(), Degree(0));
    EXPECT_TRUE((Degree::zero_poly() + Degree(3)).is_zero_poly());
    EXPECT_EQ(Degree::zero_poly().to_string(), "-inf");
    std::vector<std::size_t> zs{0, 1};
    EXPECT_EQ(total_degree(P(r, "z1^2*w^5 + z2"), zs), Degree(2));
}

TEST(Poly, FormalConjugate) {
    auto r = zw_reg();
    EXPECT_EQ(formal_conjugate(P(r, "i*z1")), P(r, "-i*zeta1"));
    EXPECT_EQ(formal_conjugate(P(r, "(1+2i)*w*z2^2")), P(r, "(1-2i)*eta*zeta2^2"));
    std::vector<std::size_t> bad{1, 1, 2, 3, 4, 5, 6, 7};
    EXPECT_THROW(formal_conjugate(P(r, "z1"), bad), UnknownVariable);
}

TEST(Poly, Printing) {
    auto r = zw_reg();
    EXPECT_EQ(to_string(MultiPoly(r)), "0");
    auto p = P(r, "(1+2i)*z1^2*w - 3/4*z2 + 5");
    EXPECT_EQ(parse_poly(r, to_string(p)), p);
    EXPECT_THROW(parse_poly(r, "z1 +"), ParseError);
    EXPECT_THROW(parse_poly(r, "q1"), UnknownVariable);
    EXPECT_THROW(parse_poly(r, "z1/z2"), ParseError);
}

TEST(PolyProperty, RingAxiomsAgainstEvaluation) {
    auto r = VarRegistry::make({{"a", VarRole::z}, {"b", VarRole::z}, {"c", VarRole::w}, {"d", VarRole::z}});
    Rng rng(7);
    for (int t = 0; t < 10000; ++t) {
        auto p = random_poly(rng, r, 4, 4, 3), q = random_poly(rng, r, 4, 4, 3), s = random_poly(rng, r, 4, 4, 2);
        ASSERT_EQ((p + q) + s, p + (q + s));
        ASSERT_EQ(p * (q + s), p * q + p * s);
        ASSERT_EQ(p * q, q * p);
        ASSERT_TRUE((p - p).is_zero());
        if (t % 10 == 0) {
            auto x = rng.gaussian_point(4);
            ASSERT_EQ((p * q).evaluate(x), p.evaluate(x) * q.evaluate(x));
            ASSERT_EQ((p + q).evaluate(x), p.evaluate(x) + q.evaluate(x));
        }
    }
}

TEST(PolyProperty, SubstituteIsHomomorphism) {
    auto r = VarRegistry::make({{"a", VarRole::z}, {"b", VarRole::z}, {"c", VarRole::w}});
    Rng rng(8);
    for (int t = 0; t < 300; ++t) {
        auto p = random_poly(rng, r, 3, 3, 3), q = random_poly(rng, r, 3, 3, 3);
        std::map<std::size_t, MultiPoly> b{{0, random_poly(rng, r, 3, 2, 2)}, {2, random_poly(rng, r, 3, 2, 2)}};
        ASSERT_EQ(substitute(p * q, b), substitute(p, b) * substitute(q, b));
        ASSERT_EQ(substitute(p + q, b), substitute(p, b) + substitute(q, b));
    }
}

TEST(PolyProperty, LeibnizRule) {
    auto r = VarRegistry::make({{"a", VarRole::z}, {"b", VarRole::z}, {"c", VarRole::w}});
    Rng rng(9);
    for (int t = 0; t < 500; ++t) {
        auto p = random_poly(rng, r, 3, 4, 4), q = random_poly(rng, r, 3, 4, 4);
        for (std::size_t v = 0; v < 3; ++v) ASSERT_EQ(partial(p * q, v), partial(p, v) * q + p * partial(q, v));
    }
}

TEST(PolyProperty, HomogeneousScalingAndReassembly) {
    auto r = VarRegistry::make({{"a", VarRole::z}, {"b", VarRole::z}, {"c", VarRole::w}});
    Rng rng(10);
    std::vector<std::size_t> vars{0, 2};
    for (int t = 0; t < 300; ++t) {
        auto p = random_poly(rng, r, 3, 4, 5);
        auto c = rng.gaussian();
        auto x = rng.gaussian_point(3);
        auto scaled = x;
        for (auto v : vars) scaled[v] *= c;
        GaussianRational rhs, pw(1);
        MultiPoly sum(r);
        for (int d = 0; d <= 8; ++d) {
            auto h = homogeneous_part(p, d, vars);
            sum += h;
            rhs += pw * h.evaluate(x);
            pw *= c;
        }
        ASSERT_EQ(sum, p);
        ASSERT_EQ(p.evaluate(scaled), rhs);
    }
}

TEST(PolyProperty, ConjugateInvolution) {
    auto r = zw_reg();
    Rng rng(12);
    for (int t = 0; t < 500; ++t) {
        auto p = random_poly(rng, r, 8, 4, 4);
        ASSERT_EQ(formal_conjugate(formal_conjugate(p)), p);
    }
}
