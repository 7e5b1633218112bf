#include <cmath>

#include <doctest.h>

#include "oracles/frozen_values.hpp"
#include "polyfock/berezin.hpp"
#include "polyfock/exact_polynomials.hpp"
#include "support/property.hpp"
#include "support/reference.hpp"

using namespace polyfock;

TEST_SUITE("exact_polynomials")
{
    TEST_CASE("Q_n coefficients equal the independently derived table")
    {
        for (const auto& row : oracle::kQn) {
            INFO("n=", row.n);
            const auto sym = compute_Qn(row.n);
            const auto strings = sym.q_poly().to_fraction_strings();
            REQUIRE(static_cast<int>(strings.size()) == row.count);
            for (int i = 0; i < row.count; ++i) {
                CHECK(strings[i] == row.coeffs[i]);
            }
        }
    }

    TEST_CASE("Q_n structure: constant one, degree 2(n-1), positive leading term")
    {
        for (int n = 1; n <= 12; ++n) {
            const auto sym = compute_Qn(n);
            CHECK(sym.n() == n);
            CHECK(sym.q_poly().coeff(0) == 1);
            CHECK(sym.q_poly().degree() == 2 * (n - 1));
            CHECK(sym.q_poly().coeffs().back() > 0);
            // Mass one implies u_n(0) = 1; the second moment fixes Q'(0) = 0 for n >= 1.
            CHECK(sym.q_poly().coeff(1) == 0);
        }
        CHECK_THROWS_AS(compute_Qn(0), std::invalid_argument);
        CHECK_THROWS_AS(compute_Qn(13), std::invalid_argument);
    }

    TEST_CASE("u_n matches the frozen Hankel transform values")
    {
        for (const auto& row : oracle::kUn) {
            INFO("n=", row.n, " x=", row.x);
            const auto sym = compute_Qn(row.n);
            CHECK(std::abs(u_n_eval(sym, row.x) - row.value) <= 1e-13 * std::max(1.0, std::abs(row.value)));
        }
    }

    TEST_CASE("b_n Fourier symbol matches the frozen values")
    {
        for (const auto& row : oracle::kBHat) {
            INFO("n=", row.n, " |xi|=", row.xi_abs);
            const auto sym = compute_Qn(row.n);
            const cplx z = std::polar(row.xi_abs, 0.7);
            CHECK(std::abs(b_hat_eval(sym, z) - row.value) <= 1e-13);
        }
    }

    TEST_CASE("closed form agrees with the Bessel integral form")
    {
        const auto& quad = gauss_laguerre(128);
        prop::for_all(
            "u two forms", 40,
            [](prop::Rng& rng) { return std::pair{prop::integer(rng, 1, 6), prop::log_uniform(rng, 1e-3, 8.0)}; },
            [&](const std::pair<int, double>& s) {
                const auto sym = compute_Qn(s.first);
                CHECK(std::abs(u_n_eval(sym, s.second) - u_n_bessel_form(s.first, s.second, quad)) <= 1e-9);
            });
        CHECK(std::abs(u_n_eval(compute_Qn(3), 2.5) - ref::u_hankel(3, 2.5)) <= 1e-9);
    }

    TEST_CASE("0 < u_n(x) < 1 for x > 0")
    {
        prop::for_all(
            "u bound", 200,
            [](prop::Rng& rng) { return std::pair{prop::integer(rng, 1, 8), prop::log_uniform(rng, 1e-3, 60.0)}; },
            [](const std::pair<int, double>& s) {
                const auto sym = compute_Qn(s.first);
                CHECK(u_n_eval(sym, s.second) > 0.0);
                CHECK(one_minus_u_n(sym, s.second) > 0.0);
                CHECK(std::abs(u_n_eval(sym, s.second) + one_minus_u_n(sym, s.second) - 1.0) <= 1e-14);
            });
    }

    TEST_CASE("1 - u_n keeps relative precision near zero")
    {
        // 1 - u_n(x) = x - x^2/2 + ... - Q'' x^2/2 ...; leading term x since Q'(0) = 0.
        const auto sym = compute_Qn(4);
        for (double x : {1e-12, 1e-9, 1e-6}) {
            CHECK(one_minus_u_n(sym, x) / x == doctest::Approx(1.0).epsilon(1e-5));
        }
    }

    TEST_CASE("H_n has limit -1/4 at the origin and is continuous at the series switch")
    {
        for (int n = 1; n <= 8; ++n) {
            const auto sym = compute_Qn(n);
            CHECK(H_n_eval(sym, 0.0) == doctest::Approx(-0.25).epsilon(1e-15));
            const double inside = H_n_eval(sym, cplx(kHSeriesRadius * (1 - 1e-9), 0.0));
            const double outside = H_n_eval(sym, cplx(kHSeriesRadius * (1 + 1e-9), 0.0));
            INFO("n=", n);
            CHECK(std::abs(inside - outside) <= 1e-12);
        }
    }

    TEST_CASE("H_n is radial")
    {
        prop::for_all(
            "H radial", 60,
            [](prop::Rng& rng) {
                return std::tuple{prop::integer(rng, 1, 6), prop::log_uniform(rng, 1e-4, 5.0), prop::uniform(rng, 0, 6.28)};
            },
            [](const std::tuple<int, double, double>& s) {
                const auto [n, r, theta] = s;
                const auto sym = compute_Qn(n);
                CHECK(H_n_eval(sym, std::polar(r, theta)) == doctest::Approx(H_n_eval(sym, cplx(r, 0.0))).epsilon(1e-13));
            });
    }

    TEST_CASE("multi-dimensional symbol factorizes and reduces to one dimension")
    {
        const auto sym = compute_Qn(3);
        const std::vector<cplx> z{{0.4, -1.1}, {2.0, 0.3}};
        const double expected = b_hat_eval(sym, z[0]) * b_hat_eval(sym, z[1]);
        CHECK(b_hat_multi_eval(sym, z) == doctest::Approx(expected).epsilon(1e-14));
        const std::vector<cplx> one{{1.3, 0.2}};
        CHECK(H_multi_eval(sym, one) == doctest::Approx(H_n_eval(sym, one[0])).epsilon(1e-12));
        const std::vector<cplx> origin{0.0, 0.0, 0.0};
        CHECK(H_multi_eval(sym, origin) == -0.25);
    }

    TEST_CASE("second difference quotients of H at the origin converge to exact limits")
    {
        for (const auto& row : oracle::kHLimits) {
            INFO("n=", row.n, " d=", row.d);
            const auto report = probe_H_multi_smoothness(row.n, row.d);
            CHECK(report.axis_limit == doctest::Approx(double(row.axis_num) / row.axis_den).epsilon(1e-7));
            CHECK(report.diagonal_limit == doctest::Approx(double(row.diag_num) / row.diag_den).epsilon(1e-7));
        }
    }

    TEST_CASE("Laplacian powers of the Gaussian follow Laguerre polynomials")
    {
        const std::vector<cplx> points{{0.0, 0.0}, {0.5, -0.25}, {1.0, 1.0}, {-2.0, 0.5}};
        CHECK(laplacian_gaussian_check(1, std::vector<cplx>{0.0}) <= 1e-6);
        // The target carries a factor k!, so the bound scales with it.
        double kfact = 1.0;
        for (int k = 1; k <= 4; ++k) {
            kfact *= k;
            INFO("k=", k);
            CHECK(laplacian_gaussian_check(k, points) <= 1e-6 * kfact);
        }
    }
}
