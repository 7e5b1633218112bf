#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace polyfock {

using Rational = mpq_class;

/// Exact binomial coefficient C(n, k) as a big integer; zero outside 0 <= k <= n.
mpz_class binomial(long n, long k);
mpz_class factorial(long n);

/// "numerator/denominator", always with an explicit denominator.
std::string to_fraction_string(const Rational& q);
Rational parse_fraction(const std::string& s);

/// Univariate polynomial with exact rational coefficients, ascending degree.
///
/// The coefficient vector is kept trimmed: the highest stored coefficient is
/// nonzero, and the zero polynomial has no coefficients at all.
class RationalPoly {
public:
    RationalPoly() = default;
    explicit RationalPoly(std::vector<Rational> coeffs);

    static RationalPoly constant(const Rational& c);
    static RationalPoly monomial(const Rational& c, std::size_t degree);

    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<Rational>& coeffs() const { return coeffs_; }
    Rational coeff(std::size_t j) const;

    /// Exact evaluation.
    Rational operator()(const Rational& x) const;

    /// Evaluates exactly at the (exactly representable) double x, then rounds once.
    double eval_exact(double x) const;

    /// Horner in floating point on coefficients rounded to double.
    double eval(double x) const;
    std::complex<double> eval(std::complex<double> z) const;

    std::vector<double> to_double() const;

    RationalPoly derivative() const;
    /// Drops every term of degree > max_degree.
    RationalPoly truncated(std::size_t max_degree) const;
    /// Substitutes x -> c*x.
    RationalPoly scaled_argument(const Rational& c) const;

    RationalPoly& operator+=(const RationalPoly& rhs);
    RationalPoly& operator-=(const RationalPoly& rhs);
    RationalPoly& operator*=(const RationalPoly& rhs);
    RationalPoly& operator*=(const Rational& c);

    friend RationalPoly operator+(RationalPoly a, const RationalPoly& b) { return a += b; }
    friend RationalPoly operator-(RationalPoly a, const RationalPoly& b) { return a -= b; }
    friend RationalPoly operator*(RationalPoly a, const RationalPoly& b) { return a *= b; }
    friend RationalPoly operator*(RationalPoly a, const Rational& c) { return a *= c; }
    friend RationalPoly operator*(const Rational& c, RationalPoly a) { return a *= c; }
    friend bool operator==(const RationalPoly& a, const RationalPoly& b);

    std::vector<std::string> to_fraction_strings() const;

private:
    void trim();

    std::vector<Rational> coeffs_;
};

}  // namespace polyfock
