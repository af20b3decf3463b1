#pragma once

// Seeded randomness. Every random draw in the library goes through Rng so a
// (seed, stream) pair fully determines a run.

#include <cstdint>
#include <random>
#include <vector>

#include "scalar.hpp"

namespace crball {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    /// Independent stream for trial `index` of suite `tag`; results do not
    /// depend on the order in which trials are scheduled.
    static Rng for_trial(std::uint64_t seed, std::uint64_t tag, std::uint64_t index) {
        return Rng(splitmix64(splitmix64(seed) ^ splitmix64(tag * 0x100000001b3ULL + 7)) ^ index);
    }

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [lo, hi]. Implemented by rejection so the sequence
    /// is identical across standard libraries.
    std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
        auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        if (span == 0) return static_cast<std::int64_t>(next());
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return lo + static_cast<std::int64_t>(x % span);
    }

    bool coin() { return (next() & 1U) != 0; }

    /// Rational p/q with |p| <= max_num, 1 <= q <= max_den.
    Rational rational(std::int64_t max_num = 9, std::int64_t max_den = 4) {
        return make_rational(Integer(static_cast<long>(uniform(-max_num, max_num))),
                             Integer(static_cast<long>(uniform(1, max_den))));
    }

    Rational nonzero_rational(std::int64_t max_num = 9, std::int64_t max_den = 4) {
        for (;;) {
            Rational r = rational(max_num, max_den);
            if (sgn(r) != 0) return r;
        }
    }

    GaussianRational gaussian(std::int64_t max_num = 9, std::int64_t max_den = 4) {
        Rational re = rational(max_num, max_den);
        Rational im = rational(max_num, max_den);
        return {re, im};
    }

    GaussianRational nonzero_gaussian(std::int64_t max_num = 9, std::int64_t max_den = 4) {
        for (;;) {
            GaussianRational g = gaussian(max_num, max_den);
            if (!g.is_zero()) return g;
        }
    }

    std::vector<GaussianRational> gaussian_point(std::size_t dim, std::int64_t max_num = 9,
                                                 std::int64_t max_den = 4) {
        std::vector<GaussianRational> p;
        p.reserve(dim);
        for (std::size_t k = 0; k < dim; ++k) p.push_back(gaussian(max_num, max_den));
        return p;
    }

private:
    std::mt19937_64 engine_;
};

} // namespace crball
