#pragma once

// Random normalized jets.
//
// free:  lambda_j, mu_jk nonzero and phi coefficients arbitrary Gaussian rationals.
// huang: lambda_j = i mu_j / 2 with mu_j = a_j^2 > 0 and every a_j^2 + a_k^2 a
//        rational square, so mu_jj = a_j and mu_jk = sqrt(mu_j + mu_k) stay
//        rational. Pairwise-square tuples come from Pythagorean triples
//        (kappa0 = 2) and Saunderson's Euler bricks (kappa0 = 3); none are
//        known for four values, so huang mode stops at kappa0 = 3.

#include <algorithm>
#include <vector>

#include "crjet.hpp"
#include "random.hpp"

namespace crball {

namespace detail {

// Primitive-ish Pythagorean triple (u, v, w) with u^2 + v^2 = w^2.
inline std::array<Integer, 3> pythagorean(Rng& rng) {
    long m = static_cast<long>(rng.uniform(2, 9));
    long k = static_cast<long>(rng.uniform(1, m - 1));
    return {Integer(m * m - k * k), Integer(2 * m * k), Integer(m * m + k * k)};
}

// Positive rationals a_1..a_count with every a_j^2 + a_k^2 a square.
inline std::vector<Rational> pairwise_square_tuple(Rng& rng, int count) {
    std::vector<Rational> a;
    if (count == 1) {
        a.push_back(make_rational(Integer(static_cast<long>(rng.uniform(1, 9))), Integer(static_cast<long>(rng.uniform(1, 4)))));
    } else if (count == 2) {
        auto t = pythagorean(rng);
        a = {Rational(t[0]), Rational(t[1])};
    } else if (count == 3) {
        auto t = pythagorean(rng);
        const Integer &u = t[0], &v = t[1], &w = t[2];
        Integer x = u * abs(Integer(4 * v * v - w * w));
        Integer y = v * abs(Integer(4 * u * u - w * w));
        Integer z = 4 * u * v * w;
        a = {Rational(x), Rational(y), Rational(z)};
    } else if (count > 3) {
        throw UnsupportedRank("huang mode supports kappa0 <= 3");
    }
    Rational scale = make_rational(Integer(1), Integer(static_cast<long>(rng.uniform(1, 4))));
    for (auto& x : a) x *= scale;
    for (std::size_t k = a.size(); k > 1; --k) {
        std::swap(a[k - 1], a[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(k) - 1))]);
    }
    return a;
}

inline Rational rational_sqrt(const Rational& x) {
    Integer num = sqrt(x.get_num()), den = sqrt(x.get_den());
    if (num * num != x.get_num() || den * den != x.get_den()) throw std::logic_error("not a rational square");
    return make_rational(num, den);
}

} // namespace detail

inline NormalizedJet sample_jet(int n, int kappa0, JetMode mode, Rng& rng) {
    NormalizedJet jet;
    jet.n = n;
    jet.kappa0 = kappa0;
    jet.mode = mode;
    IndexMap im = IndexMap::build(n, kappa0);
    const auto np = static_cast<std::size_t>(n - 1);
    jet.lambda.assign(np, GaussianRational(0));
    if (mode == JetMode::free) {
        for (int j = 0; j < kappa0; ++j) jet.lambda[static_cast<std::size_t>(j)] = rng.nonzero_gaussian();
        for (std::size_t l = 0; l < im.s0_size; ++l) jet.mu.push_back(rng.nonzero_gaussian());
    } else {
        auto a = detail::pairwise_square_tuple(rng, kappa0);
        for (int j = 0; j < kappa0; ++j) jet.lambda[static_cast<std::size_t>(j)] = lambda_from_mu(a[static_cast<std::size_t>(j)] * a[static_cast<std::size_t>(j)]);
        for (std::size_t l = 0; l < im.s0_size; ++l) {
            auto [j, k] = im.ell[l];
            const Rational& aj = a[static_cast<std::size_t>(j - 1)];
            Rational v = (j == k || k > kappa0) ? aj
                                                : detail::rational_sqrt(Rational(aj * aj + a[static_cast<std::size_t>(k - 1)] * a[static_cast<std::size_t>(k - 1)]));
            jet.mu.emplace_back(v);
        }
    }
    for (std::size_t l = 0; l < im.s0_size; ++l) {
        std::vector<GaussianRational> row;
        for (std::size_t m = 0; m < np; ++m) row.push_back(rng.gaussian());
        jet.phi_lin.push_back(std::move(row));
        jet.phi_w2.push_back(rng.gaussian());
    }
    jet.validate();
    return jet;
}

} // namespace crball
