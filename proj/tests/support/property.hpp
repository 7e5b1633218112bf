#pragma once

// Minimal property-testing harness: seeded generators and a for_all loop that
// reports the case index and seed of the first counterexample.

#include <complex>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <random>
#include <string_view>
#include <vector>

#include <doctest.h>

#include "polyfock/rational_poly.hpp"

namespace prop {

using Rng = std::mt19937_64;

/// POLYFOCK_PROPERTY_SEED overrides the fixed default seed.
inline std::uint64_t base_seed()
{
    if (const char* env = std::getenv("POLYFOCK_PROPERTY_SEED")) {
        return std::strtoull(env, nullptr, 10);
    }
    return 0x5eed2024ULL;
}

inline std::uint64_t seed_for(std::string_view name)
{
    std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
    for (char c : name) {
        h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ULL;
    }
    return base_seed() ^ h;
}

/// Runs `property(sample)` on `cases` samples drawn by `gen`.
template <class Gen, class Property>
void for_all(std::string_view name, int cases, Gen gen, Property property)
{
    const std::uint64_t seed = seed_for(name);
    Rng rng(seed);
    for (int i = 0; i < cases; ++i) {
        auto sample = gen(rng);
        INFO("property '", std::string(name), "' case ", i, " seed ", seed);
        property(sample);
    }
}

inline double uniform(Rng& rng, double lo, double hi)
{
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int integer(Rng& rng, int lo, int hi)
{
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline double log_uniform(Rng& rng, double lo, double hi)
{
    return std::exp(uniform(rng, std::log(lo), std::log(hi)));
}

inline std::complex<double> in_disk(Rng& rng, double radius)
{
    // Area-uniform.
    const double r = radius * std::sqrt(uniform(rng, 0.0, 1.0));
    return std::polar(r, uniform(rng, 0.0, 2.0 * 3.14159265358979323846));
}

inline polyfock::Rational small_rational(Rng& rng)
{
    polyfock::Rational q(integer(rng, -20, 20), integer(rng, 1, 9));
    q.canonicalize();
    return q;
}

inline polyfock::RationalPoly small_poly(Rng& rng, int max_degree = 5)
{
    const int degree = integer(rng, -1, max_degree);
    std::vector<polyfock::Rational> c;
    for (int i = 0; i <= degree; ++i) {
        c.push_back(small_rational(rng));
    }
    return polyfock::RationalPoly(std::move(c));
}

}  // namespace prop
