#pragma once

#include <span>
#include <vector>

#include "polyfock/common.hpp"
#include "polyfock/quadrature.hpp"
#include "polyfock/rational_poly.hpp"

namespace polyfock {

/// The Fourier symbol of b_n: b_n^(z) = Q_n(|z|^2/4) e^{-|z|^2/4}.
///
/// Invariants: deg Q_n = 2(n-1) and Q_n(0) = 1, both exact.
class BerezinSymbol {
public:
    BerezinSymbol(int n, RationalPoly q);

    int n() const { return n_; }
    const RationalPoly& q_poly() const { return q_; }

    /// Q_n(x) in double.
    double q(double x) const;
    /// Q_n(x) - 1, summed without the constant so small x keeps full precision.
    double q_minus_one(double x) const;
    /// Exact Taylor coefficients of (1 - u_n(t)) / (-4t) through t^8.
    const std::vector<double>& h_series() const { return h_series_; }

private:
    int n_;
    RationalPoly q_;
    std::vector<double> q_double_;
    std::vector<double> h_series_;
};

/// Q_n = (1/n) sum_{k,l<n} C(n,k+1) C(n,l+1) C(k+l,k) (-1)^{k+l} L^0_{k+l}.
/// Requires 1 <= n <= 12.
BerezinSymbol compute_Qn(int n);

/// u_n(x) = Q_n(x) e^{-x}, x >= 0.
double u_n_eval(const BerezinSymbol& sym, double x);

/// 1 - u_n(x) without cancellation for small x.
double one_minus_u_n(const BerezinSymbol& sym, double x);

/// u_n(x) = (1/n) int_0^inf e^{-t} L^1_{n-1}(t)^2 J0(2 sqrt(x t)) dt, integrated
/// with `quad` and checked against twice the nodes. Independent of Q_n.
double u_n_bessel_form(int n, double x, const QuadratureRule& quad, double tol = 1e-9);

/// b_n^(z) = u_n(|z|^2/4).
double b_hat_eval(const BerezinSymbol& sym, cplx z);

/// b_{d,n}^(z) = e^{-|z|^2/4} prod_j Q_n(|z_j|^2/4).
double b_hat_multi_eval(const BerezinSymbol& sym, std::span<const cplx> z);

inline constexpr double kHSeriesRadius = 1e-2;

/// H_n(z) = (1 - b_n^(z)) / (-|z|^2), with the removable singularity at 0
/// handled by a truncated series for |z| <= kHSeriesRadius.
double H_n_eval(const BerezinSymbol& sym, cplx z);

/// H_{d,n}(z) = (1 - b_{d,n}^(z)) / (-|z|^2), set to its radial limit -1/4 at 0.
double H_multi_eval(const BerezinSymbol& sym, std::span<const cplx> z);

/// max over points of |Delta_h^k g - (-1)^k k! L^0_k(|z|^2/4) g| for the
/// Gaussian g(z) = e^{-|z|^2/4}. Requires k <= 6 and |z| <= 6.
/// Throws StepTooCoarse when the Richardson ladder is off order.
double laplacian_gaussian_check(int k, std::span<const cplx> points);

/// Base step used by laplacian_gaussian_check for a given power k.
double laplacian_gaussian_step(int k);

}  // namespace polyfock
