#include "polyfock/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "polyfock/common.hpp"

namespace polyfock {

void LaguerreIndex::validate() const
{
    if (k < 0) {
        throw std::invalid_argument("Laguerre degree must be nonnegative");
    }
    if (beta < 0) {
        throw std::invalid_argument("Laguerre parameter beta must be a nonnegative integer");
    }
}

RationalPoly laguerre_poly(LaguerreIndex idx)
{
    idx.validate();
    std::vector<Rational> coeffs(static_cast<std::size_t>(idx.k) + 1);
    for (int j = 0; j <= idx.k; ++j) {
        Rational c(binomial(idx.k + idx.beta, idx.k - j), factorial(j));
        if (j % 2 == 1) {
            c = -c;
        }
        coeffs[j] = c;
    }
    return RationalPoly(std::move(coeffs));
}

double laguerre_eval(LaguerreIndex idx, double x)
{
    return laguerre_poly(idx).eval_exact(x);
}

double laguerre_recurrence(LaguerreIndex idx, double x)
{
    idx.validate();
    const double beta = idx.beta;
    double prev = 1.0;
    if (idx.k == 0) {
        return prev;
    }
    double cur = 1.0 + beta - x;
    for (int j = 1; j < idx.k; ++j) {
        const double next = ((2.0 * j + 1.0 + beta - x) * cur - (j + beta) * prev) / (j + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

double bessel_j0_series(double x)
{
    const long double q = -static_cast<long double>(x) * x / 4.0L;
    long double term = 1.0L;
    long double sum = 1.0L;
    for (int m = 1; m < 200; ++m) {
        term *= q / (static_cast<long double>(m) * m);
        sum += term;
        if (std::abs(term) < 1e-22L * std::abs(sum) && std::abs(term) < 1e-22L) {
            break;
        }
    }
    return static_cast<double>(sum);
}

double bessel_j0_integral(double x)
{
    const double ax = std::abs(x);
    auto integrand = [ax](double theta) { return std::cos(ax * std::cos(theta)); };
    // The integrand extends to an even 2pi-periodic function, so the trapezoid
    // rule on [0, pi] converges spectrally; doubling reuses the old nodes.
    int panels = 16;
    double sum = 0.5 * (integrand(0.0) + integrand(kPi));
    for (int j = 1; j < panels; ++j) {
        sum += integrand(kPi * j / panels);
    }
    double estimate = sum / panels;
    for (int level = 0; level < 20; ++level) {
        for (int j = 1; j < 2 * panels; j += 2) {
            sum += integrand(kPi * j / (2.0 * panels));
        }
        panels *= 2;
        const double refined = sum / panels;
        // Terms are bounded by 1, so a few ulps is the round-off floor.
        const bool converged = std::abs(refined - estimate) <= 4e-16 && panels > ax;
        estimate = refined;
        if (converged) {
            break;
        }
    }
    return estimate;
}

double bessel_j0(double x)
{
    const double ax = std::abs(x);
    return ax <= kBesselSeriesSwitch ? bessel_j0_series(ax) : bessel_j0_integral(ax);
}

namespace {

double bessel_laguerre_integral(int k, double x, const QuadratureRule& quad)
{
    // Neumaier-compensated sum of w_i t_i^k J0(2 sqrt(x t_i)).
    double sum = 0.0;
    double comp = 0.0;
    for (std::size_t i = 0; i < quad.size(); ++i) {
        const double t = quad.nodes[i];
        const double term = quad.weights[i] * std::pow(t, k) * bessel_j0(2.0 * std::sqrt(x * t));
        const double s = sum + term;
        comp += std::abs(sum) >= std::abs(term) ? (sum - s) + term : (term - s) + sum;
        sum = s;
    }
    return sum + comp;
}

}  // namespace

double laguerre_bessel_residual(int k, double x, const QuadratureRule& quad, double tol)
{
    if (k < 0 || !(x >= 0.0)) {
        throw std::invalid_argument("laguerre_bessel_residual: need k >= 0 and x >= 0");
    }
    if (quad.kind != QuadratureKind::gauss_laguerre_radial || quad.alpha != 0.0) {
        throw std::invalid_argument("laguerre_bessel_residual: needs a Gauss-Laguerre rule with alpha = 0");
    }
    const double coarse = bessel_laguerre_integral(k, x, quad);
    const auto& fine_rule = gauss_laguerre(2 * quad.order, 0.0);
    const double fine = bessel_laguerre_integral(k, x, fine_rule);
    if (std::abs(fine - coarse) > tol * std::max(1.0, std::abs(fine))) {
        std::ostringstream msg;
        msg << "laguerre_bessel_residual(k=" << k << ", x=" << x << "): " << quad.size() << " vs "
            << fine_rule.size() << " nodes differ by " << std::abs(fine - coarse);
        throw InsufficientQuadrature(msg.str());
    }
    const Rational exact_poly = Rational(factorial(k)) * laguerre_poly({k, 0})(Rational(x));
    const double lhs = exact_poly.get_d() * std::exp(-x);
    return std::abs(lhs - fine);
}

}  // namespace polyfock
