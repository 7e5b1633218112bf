#pragma once

#include "polyfock/quadrature.hpp"
#include "polyfock/rational_poly.hpp"

namespace polyfock {

/// Degree k and superscript beta of the generalized Laguerre polynomial L^beta_k.
struct LaguerreIndex {
    int k = 0;
    int beta = 0;

    /// Throws std::invalid_argument on a negative degree or parameter.
    void validate() const;
};

/// L^beta_k(x) = sum_j C(k+beta, k-j) (-x)^j / j!, exact coefficients.
RationalPoly laguerre_poly(LaguerreIndex idx);

/// L^beta_k(x) through exact rational evaluation at x, rounded once.
double laguerre_eval(LaguerreIndex idx, double x);

/// L^beta_k(x) by the three-term recurrence in double. This is the hot path
/// used inside quadratures.
double laguerre_recurrence(LaguerreIndex idx, double x);

/// J0 by its power series, summed in long double. Accurate for |x| <= 16.
double bessel_j0_series(double x);

/// J0 as (1/pi) int_0^pi cos(x cos theta) dtheta, by panel doubling of the
/// trapezoid rule until two successive estimates agree.
double bessel_j0_integral(double x);

/// Series below |x| = 12, integral form above. Even by construction.
double bessel_j0(double x);

inline constexpr double kBesselSeriesSwitch = 12.0;

/// |k! L^0_k(x) e^{-x} - int_0^inf e^{-t} t^k J0(2 sqrt(x t)) dt|, the integral
/// taken with `quad` and again with twice as many nodes. Throws
/// InsufficientQuadrature when the two estimates differ by more than tol.
double laguerre_bessel_residual(int k, double x, const QuadratureRule& quad, double tol = 1e-9);

}  // namespace polyfock
