#include <cmath>

#include <doctest.h>
#include <json.hpp>

#include "oracles/frozen_values.hpp"
#include "polyfock/exotic.hpp"
#include "support/property.hpp"
#include "support/reference.hpp"

using namespace polyfock;

namespace {

const oracle::QnCoefficients& qn_row(int n)
{
    for (const auto& row : oracle::kQn) {
        if (row.n == n) {
            return row;
        }
    }
    throw std::out_of_range("no Q_n row");
}

}  // namespace

TEST_SUITE("exotic")
{
    TEST_CASE("moment polynomials have the parity of k")
    {
        for (int k = 0; k <= 20; ++k) {
            const auto p = moment_polynomial(k);
            CHECK(p.degree() == k);
            for (int j = 0; j <= p.degree(); ++j) {
                if ((j + k) % 2 == 1) {
                    CHECK(p.coeff(j) == 0);
                }
            }
        }
    }

    TEST_CASE("Gaussian moments match the frozen values and a trapezoid reference")
    {
        for (const auto& row : oracle::kMoments) {
            INFO("k=", row.k, " a=", row.a);
            const cplx got = gaussian_moment_I(row.k, row.a);
            CHECK(std::abs(got - row.value) <= 1e-13 * std::max(1.0, std::abs(row.value)));
        }
        prop::for_all(
            "moment recurrence", 20,
            [](prop::Rng& rng) {
                return std::pair{prop::integer(rng, 0, 8), cplx(prop::uniform(rng, -2, 2), prop::uniform(rng, -2, 2))};
            },
            [](const std::pair<int, cplx>& s) {
                const cplx want = ref::gaussian_moment(s.first, s.second);
                CHECK(std::abs(gaussian_moment_I(s.first, s.second) - want) <= 1e-10 * std::max(1.0, std::abs(want)));
            });
    }

    TEST_CASE("exponential gain B_n f_a / f_a matches the frozen values")
    {
        for (const auto& row : oracle::kExponentialGain) {
            INFO("n=", row.n, " a=", row.a);
            const cplx z(0.3, -0.2);
            const cplx ratio = berezin_exponential_closed_form(row.n, row.a, ComplexPoint{z}) /
                               ExponentialSymbol(row.a)(z);
            CHECK(std::abs(ratio - row.value) <= 1e-12 * std::abs(row.value));
            // Same gain from the exact multiplier polynomial.
            const auto p = multiplier_polynomial_P(row.n);
            const cplx a2 = row.a * row.a;
            CHECK(std::abs(p.eval(a2) * std::exp(a2 / 4.0) - row.value) <= 1e-12 * std::abs(row.value));
        }
    }

    TEST_CASE("multiplier polynomial equals Q_n(-x/4)")
    {
        for (const auto& row : oracle::kQn) {
            if (row.n > 6) {
                continue;
            }
            std::vector<Rational> c;
            for (int i = 0; i < row.count; ++i) {
                c.push_back(parse_fraction(std::string(row.coeffs[i])));
            }
            CHECK(multiplier_polynomial_P(row.n) == RationalPoly(c).scaled_argument(Rational(-1, 4)));
        }
    }

    TEST_CASE("closed form agrees with quadrature for moderate a")
    {
        prop::for_all(
            "closed form vs quadrature", 12,
            [](prop::Rng& rng) {
                return std::tuple{prop::integer(rng, 1, 3), cplx(prop::uniform(rng, -2, 2), prop::uniform(rng, -3, 3)),
                                  prop::in_disk(rng, 1.0)};
            },
            [](const std::tuple<int, cplx, cplx>& s) {
                const auto [n, a, z] = s;
                const ExponentialSymbol f(a);
                const cplx closed = berezin_exponential_closed_form(n, a, ComplexPoint{z});
                const cplx quad = berezin_quadrature(exotic_quadrature_config(n, a), f.as_point_function(), ComplexPoint{z});
                CHECK(std::abs(closed - quad) <= 1e-9 * std::abs(closed));
            });
    }

    TEST_CASE("n = 1 roots are the nonzero multiples of 8 pi i")
    {
        const auto roots = find_exotic_roots(1, 30.0);
        REQUIRE(roots.size() == 2);
        CHECK(std::abs(roots[0].root - cplx(0, -8 * kPi)) <= 1e-9);
        CHECK(std::abs(roots[1].root - cplx(0, 8 * kPi)) <= 1e-9);
        CHECK_THROWS_AS(find_exotic_roots(1, 20.0), NoRootFound);
    }

    TEST_CASE("roots for n = 2, 3 match the frozen values")
    {
        for (int n : {2, 3}) {
            const auto roots = find_exotic_roots(n, 40.0);
            for (const auto& want : oracle::kExoticRoots) {
                if (want.n != n) {
                    continue;
                }
                for (cplx target : {want.root, std::conj(want.root)}) {
                    double best = 1e300;
                    for (const auto& r : roots) {
                        best = std::min(best, std::abs(r.root - target));
                    }
                    INFO("n=", n, " root=", target);
                    CHECK(best <= 1e-9 * std::abs(target));
                }
            }
            for (const auto& r : roots) {
                CHECK(r.residual <= RootCertificate::kMaxResidual);
                const auto& q = qn_row(n);
                CHECK(std::abs(ref::exotic_g(q.coeffs, q.count, r.root)) <= 1e-8);
            }
        }
    }

    TEST_CASE("roots come in conjugate pairs, sorted and deduplicated")
    {
        const auto roots = find_exotic_roots(2, 60.0);
        for (std::size_t i = 0; i < roots.size(); ++i) {
            bool paired = false;
            for (const auto& s : roots) {
                paired = paired || std::abs(s.root - std::conj(roots[i].root)) <= 1e-8;
            }
            CHECK(paired);
            if (i > 0) {
                CHECK(roots[i - 1].root.imag() <= roots[i].root.imag());
                CHECK(std::abs(roots[i - 1].root - roots[i].root) > 1e-6);
            }
        }
        CHECK(find_exotic_roots(2, 60.0, 3).size() == 3);
    }

    TEST_CASE("serial and parallel scans agree")
    {
        const auto a = find_exotic_roots(3, 25.0, 64, Execution::serial);
        const auto b = find_exotic_roots(3, 25.0, 64, Execution::parallel);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i].root == b[i].root);
        }
    }

    TEST_CASE("winding number counts zeros")
    {
        const auto p = multiplier_polynomial_P(1);
        // Only the origin inside.
        CHECK(exotic_winding_number(p, -0.5, -0.5, 1.0) == 1);
        CHECK(exotic_winding_number(p, -0.5, 8 * kPi - 0.5, 1.0) == 1);
        CHECK(exotic_winding_number(p, 3.0, 3.0, 1.0) == 0);
    }

    TEST_CASE("certificates serialize with six keys and are re-validated")
    {
        const auto roots = find_exotic_roots(2, 12.0);
        const nlohmann::json j = roots.front();
        CHECK(j.size() == 6);
        for (const char* key : {"n", "root_re", "root_im", "residual", "a_re", "a_im"}) {
            CHECK(j.contains(key));
        }
        const auto back = j.get<RootCertificate>();
        CHECK(back.root == roots.front().root);
        CHECK(back.n == 2);

        nlohmann::json forged = j;
        forged["root_re"] = 1.0;
        CHECK_THROWS_AS(forged.get<RootCertificate>(), std::invalid_argument);
        forged = j;
        forged["root_re"] = 0.0;
        forged["root_im"] = 0.0;
        CHECK_THROWS_AS(forged.get<RootCertificate>(), std::invalid_argument);
    }

    TEST_CASE("certified roots give non-harmonic fixed points")
    {
        const auto roots = find_exotic_roots(2, 12.0);
        const auto probes = standard_exotic_probes();
        for (const auto& cert : roots) {
            const auto v = verify_exotic_fixed_point(cert, probes, exotic_quadrature_config(2, cert.a()));
            CHECK(v.quadrature_checked);
            CHECK(v.quadrature_residual <= 1e-9);
            CHECK(v.closed_form_residual <= 1e-12);
            CHECK(v.laplacian_residual <= 1e-6);
            CHECK(std::abs(cert.a() * cert.a()) > 1.0);  // Laplacian f_a = a^2 f_a is nonzero
            CHECK_FALSE(v.overflow_warning);
        }
    }

    TEST_CASE("a non-root exponential is not fixed")
    {
        const ExponentialSymbol f(cplx(1.0, 1.0));
        const auto probes = standard_exotic_probes();
        const auto v = verify_exotic_fixed_point(2, f, probes, exotic_quadrature_config(2, f.a));
        CHECK(v.residual() > 1e-2);
    }

    TEST_CASE("verification preconditions")
    {
        const ExponentialSymbol f(cplx(2.0, 0.0));
        const auto probes = standard_exotic_probes();
        auto narrow = exotic_quadrature_config(2, f.a);
        narrow.truncation_radius = 7.0;
        CHECK_THROWS_AS(verify_exotic_fixed_point(2, f, probes, narrow), std::invalid_argument);
        const std::vector<ComplexPoint> far{ComplexPoint{cplx(2.0, 0.0)}};
        CHECK_THROWS_AS(verify_exotic_fixed_point(2, f, far, exotic_quadrature_config(2, f.a)), std::invalid_argument);
        CHECK_THROWS_AS(ExponentialSymbol(cplx(NAN, 0.0)), std::invalid_argument);
    }

    TEST_CASE("exponential eigen-relation by finite differences")
    {
        prop::for_all(
            "eigen relation", 10,
            [](prop::Rng& rng) { return prop::in_disk(rng, 3.0); },
            [](cplx a) {
                const std::vector<cplx> pts{0.0, {0.5, 0.5}, {-1.0, 0.2}};
                CHECK(exponential_laplacian_residual(a, pts) <= 1e-6);
            });
    }
}
