#include <cmath>
#include <limits>

#include <doctest.h>

#include "oracles/frozen_values.hpp"
#include "polyfock/common.hpp"
#include "polyfock/special_functions.hpp"
#include "support/property.hpp"
#include "support/reference.hpp"

using namespace polyfock;

namespace {

double ulps(double a, double b)
{
    if (a == b) {
        return 0.0;
    }
    const double scale = std::max(std::abs(a), std::abs(b));
    return std::abs(a - b) / (scale * std::numeric_limits<double>::epsilon());
}

}  // namespace

TEST_SUITE("special_functions")
{
    TEST_CASE("exact Laguerre evaluation is within a few ulps of the frozen table")
    {
        for (const auto& row : oracle::kLaguerre) {
            INFO("k=", row.k, " beta=", row.beta, " x=", row.x);
            const double v = laguerre_eval({row.k, row.beta}, row.x);
            if (std::abs(row.value) < 1e-300) {
                CHECK(v == 0.0);
            } else {
                CHECK(ulps(v, row.value) <= 8.0);
            }
        }
    }

    TEST_CASE("recurrence agrees with the table up to the cancellation in the sum")
    {
        for (const auto& row : oracle::kLaguerre) {
            INFO("k=", row.k, " beta=", row.beta, " x=", row.x);
            // Largest term of the explicit sum bounds the condition number.
            long double largest = 0.0L;
            for (int j = 0; j <= row.k; ++j) {
                largest = std::max(largest, std::abs(ref::laguerre_sum(j, row.beta, row.x)));
            }
            const double bound = 1e-13 * std::max(1.0, static_cast<double>(largest));
            CHECK(std::abs(laguerre_recurrence({row.k, row.beta}, row.x) - row.value) <= bound);
        }
    }

    TEST_CASE("Laguerre polynomial coefficients match the explicit sum")
    {
        prop::for_all(
            "laguerre coefficients", 60,
            [](prop::Rng& rng) {
                return std::tuple{prop::integer(rng, 0, 14), prop::integer(rng, 0, 3), prop::uniform(rng, 0.0, 6.0)};
            },
            [](const std::tuple<int, int, double>& s) {
                const auto [k, beta, x] = s;
                const auto p = laguerre_poly({k, beta});
                CHECK(p.degree() == k);
                const double want = static_cast<double>(ref::laguerre_sum(k, beta, x));
                CHECK(p.eval(x) == doctest::Approx(want).epsilon(1e-10).scale(1.0));
            });
    }

    TEST_CASE("Laguerre derivative identity d/dx L^b_k = -L^{b+1}_{k-1}")
    {
        for (int k = 1; k <= 10; ++k) {
            for (int beta = 0; beta <= 2; ++beta) {
                CHECK(laguerre_poly({k, beta}).derivative() ==
                      laguerre_poly({k - 1, beta + 1}) * Rational(-1));
            }
        }
    }

    TEST_CASE("negative indices are rejected")
    {
        CHECK_THROWS_AS(laguerre_poly({-1, 0}), std::invalid_argument);
        CHECK_THROWS_AS(laguerre_eval({2, -1}, 1.0), std::invalid_argument);
    }

    TEST_CASE("J0 matches the frozen table")
    {
        for (const auto& row : oracle::kBesselJ0) {
            INFO("x=", row.x);
            CHECK(std::abs(bessel_j0(row.x) - row.value) <= 4e-15);
            CHECK(bessel_j0(-row.x) == bessel_j0(row.x));
        }
    }

    TEST_CASE("series and integral forms of J0 agree on the overlap")
    {
        prop::for_all(
            "j0 forms", 80, [](prop::Rng& rng) { return prop::uniform(rng, 0.0, 16.0); },
            [](double x) {
                CHECK(std::abs(bessel_j0_series(x) - bessel_j0_integral(x)) <= 1e-13);
                CHECK(std::abs(bessel_j0(x) - std::cyl_bessel_j(0.0, x)) <= 1e-14);
            });
    }

    TEST_CASE("J0 is bounded by one in magnitude")
    {
        prop::for_all(
            "j0 bound", 80, [](prop::Rng& rng) { return prop::log_uniform(rng, 1e-6, 200.0); },
            [](double x) { CHECK(std::abs(bessel_j0(x)) <= 1.0); });
    }

    TEST_CASE("Laguerre Bessel transform identity holds for small degree")
    {
        const auto& quad = gauss_laguerre(128);
        for (int k = 0; k <= 8; ++k) {
            for (double x : {0.0, 0.5, 2.0, 7.5}) {
                INFO("k=", k, " x=", x);
                CHECK(laguerre_bessel_residual(k, x, quad) <= 1e-9);
            }
        }
    }

    TEST_CASE("too few nodes for an oscillatory transform throws")
    {
        CHECK_THROWS_AS(laguerre_bessel_residual(2, 60.0, gauss_laguerre(4), 1e-14), InsufficientQuadrature);
    }
}
