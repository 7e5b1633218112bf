#include <doctest.h>

#include "polyfock/rational_poly.hpp"
#include "support/property.hpp"

using polyfock::Rational;
using polyfock::RationalPoly;

TEST_SUITE("rational_poly")
{
    TEST_CASE("binomial and factorial are exact big integers")
    {
        CHECK(polyfock::binomial(10, 3) == 120);
        CHECK(polyfock::binomial(5, 7) == 0);
        CHECK(polyfock::binomial(5, -1) == 0);
        CHECK(polyfock::factorial(0) == 1);
        CHECK(polyfock::factorial(25).get_str() == "15511210043330985984000000");
        CHECK_THROWS_AS(polyfock::factorial(-1), std::invalid_argument);
    }

    TEST_CASE("fraction strings round-trip and always carry a denominator")
    {
        CHECK(polyfock::to_fraction_string(Rational(1)) == "1/1");
        CHECK(polyfock::to_fraction_string(Rational(-6, 4)) == "-3/2");
        CHECK(polyfock::parse_fraction("-3/2") == Rational(-3, 2));
        CHECK(polyfock::parse_fraction("7") == Rational(7));
        CHECK(polyfock::parse_fraction("10/4") == Rational(5, 2));
        CHECK_THROWS_AS(polyfock::parse_fraction("1/0"), std::invalid_argument);
        CHECK_THROWS_AS(polyfock::parse_fraction("abc"), std::invalid_argument);
    }

    TEST_CASE("zero polynomial and trimming")
    {
        const RationalPoly zero;
        CHECK(zero.is_zero());
        CHECK(zero.degree() == -1);
        CHECK(zero.to_fraction_strings() == std::vector<std::string>{"0/1"});
        const RationalPoly trailing({Rational(1), Rational(0), Rational(0)});
        CHECK(trailing.degree() == 0);
        CHECK(trailing.coeff(5) == 0);
    }

    TEST_CASE("arithmetic, derivative and substitution on a fixed example")
    {
        const RationalPoly p({Rational(1), Rational(0), Rational(1, 2)});  // 1 + x^2/2
        CHECK(p(Rational(2)) == 3);
        CHECK(p.derivative() == RationalPoly::monomial(Rational(1), 1));
        CHECK(p.scaled_argument(Rational(-1, 4)) == RationalPoly({Rational(1), Rational(0), Rational(1, 32)}));
        CHECK((p * p).degree() == 4);
        CHECK((p - p).is_zero());
        CHECK(p.truncated(1) == RationalPoly::constant(1));
        CHECK(p.eval(0.5) == doctest::Approx(1.125).epsilon(1e-15));
        CHECK(p.eval_exact(3.0) == 5.5);
        const auto z = p.eval(std::complex<double>(0.0, 1.0));
        CHECK(z.real() == doctest::Approx(0.5));
        CHECK(z.imag() == 0.0);
    }

    TEST_CASE("ring laws hold exactly on random polynomials")
    {
        struct Triple {
            RationalPoly p, q, r;
            Rational x;
        };
        prop::for_all(
            "ring laws", 150,
            [](prop::Rng& rng) {
                return Triple{prop::small_poly(rng), prop::small_poly(rng), prop::small_poly(rng),
                              prop::small_rational(rng)};
            },
            [](const Triple& s) {
                CHECK((s.p + s.q) * s.r == s.p * s.r + s.q * s.r);
                CHECK(s.p * s.q == s.q * s.p);
                CHECK((s.p * s.q)(s.x) == s.p(s.x) * s.q(s.x));
                CHECK((s.p * s.q).derivative() == s.p.derivative() * s.q + s.p * s.q.derivative());
                CHECK(s.p.scaled_argument(Rational(3, 2))(s.x) == s.p(Rational(3, 2) * s.x));
                if (!s.p.is_zero() && !s.q.is_zero()) {
                    CHECK((s.p * s.q).degree() == s.p.degree() + s.q.degree());
                }
            });
    }

    TEST_CASE("fraction string serialization round-trips coefficient lists")
    {
        prop::for_all(
            "serialization", 100, [](prop::Rng& rng) { return prop::small_poly(rng, 8); },
            [](const RationalPoly& p) {
                std::vector<Rational> back;
                for (const auto& s : p.to_fraction_strings()) {
                    back.push_back(polyfock::parse_fraction(s));
                }
                CHECK(RationalPoly(back) == p);
            });
    }
}
