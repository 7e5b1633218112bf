#include "polyfock/exact_polynomials.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "polyfock/finite_difference.hpp"
#include "polyfock/special_functions.hpp"

namespace polyfock {

namespace {

// Taylor polynomial of e^{-t} through t^degree.
RationalPoly exp_neg_series(std::size_t degree)
{
    std::vector<Rational> c(degree + 1);
    for (std::size_t j = 0; j <= degree; ++j) {
        c[j] = Rational(j % 2 == 0 ? 1 : -1, factorial(static_cast<long>(j)));
    }
    return RationalPoly(std::move(c));
}

}  // namespace

BerezinSymbol::BerezinSymbol(int n, RationalPoly q) : n_(n), q_(std::move(q))
{
    if (n_ < 1) {
        throw std::invalid_argument("BerezinSymbol: n must be positive");
    }
    if (q_.degree() != 2 * (n_ - 1)) {
        throw std::logic_error("BerezinSymbol: deg Q_n must equal 2(n-1)");
    }
    if (q_.coeff(0) != 1) {
        throw std::logic_error("BerezinSymbol: Q_n(0) must equal 1");
    }
    q_double_ = q_.to_double();

    constexpr std::size_t kSeriesTerms = 9;  // h_0 .. h_8
    const RationalPoly u = (q_ * exp_neg_series(kSeriesTerms)).truncated(kSeriesTerms);
    h_series_.resize(kSeriesTerms);
    for (std::size_t m = 0; m < kSeriesTerms; ++m) {
        h_series_[m] = Rational(u.coeff(m + 1) / 4).get_d();
    }
}

double BerezinSymbol::q(double x) const
{
    double acc = 0.0;
    for (auto it = q_double_.rbegin(); it != q_double_.rend(); ++it) {
        acc = acc * x + *it;
    }
    return acc;
}

double BerezinSymbol::q_minus_one(double x) const
{
    double acc = 0.0;
    for (std::size_t j = q_double_.size(); j-- > 1;) {
        acc = acc * x + q_double_[j];
    }
    return acc * x;
}

BerezinSymbol compute_Qn(int n)
{
    if (n < 1 || n > 12) {
        throw std::invalid_argument("compute_Qn: need 1 <= n <= 12");
    }
    RationalPoly sum;
    for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
            Rational w(binomial(n, k + 1) * binomial(n, l + 1) * binomial(k + l, k));
            if ((k + l) % 2 == 1) {
                w = -w;
            }
            sum += laguerre_poly({k + l, 0}) * w;
        }
    }
    sum *= Rational(1, n);
    return BerezinSymbol(n, std::move(sum));
}

double u_n_eval(const BerezinSymbol& sym, double x)
{
    if (!(x >= 0.0)) {
        throw std::invalid_argument("u_n_eval: x must be nonnegative");
    }
    return sym.q(x) * std::exp(-x);
}

double one_minus_u_n(const BerezinSymbol& sym, double x)
{
    return -std::expm1(-x) - sym.q_minus_one(x) * std::exp(-x);
}

double u_n_bessel_form(int n, double x, const QuadratureRule& quad, double tol)
{
    if (n < 1 || !(x >= 0.0)) {
        throw std::invalid_argument("u_n_bessel_form: need n >= 1 and x >= 0");
    }
    auto integrate = [n, x](const QuadratureRule& rule) {
        double sum = 0.0;
        for (std::size_t i = 0; i < rule.size(); ++i) {
            const double t = rule.nodes[i];
            const double lag = laguerre_recurrence({n - 1, 1}, t);
            sum += rule.weights[i] * lag * lag * bessel_j0(2.0 * std::sqrt(x * t));
        }
        return sum / n;
    };
    const double coarse = integrate(quad);
    const double fine = integrate(gauss_laguerre(2 * quad.order, quad.alpha));
    if (std::abs(fine - coarse) > tol) {
        std::ostringstream msg;
        msg << "u_n_bessel_form(n=" << n << ", x=" << x << "): doubling changed the estimate by "
            << std::abs(fine - coarse);
        throw InsufficientQuadrature(msg.str());
    }
    return fine;
}

double b_hat_eval(const BerezinSymbol& sym, cplx z)
{
    return u_n_eval(sym, std::norm(z) / 4.0);
}

namespace {

struct MultiParts {
    double s = 0.0;      // |z|^2 / 4
    double delta = 0.0;  // prod_j Q_n(|z_j|^2/4) - 1
};

MultiParts multi_parts(const BerezinSymbol& sym, std::span<const cplx> z)
{
    MultiParts out;
    for (const cplx& zj : z) {
        const double t = std::norm(zj) / 4.0;
        const double qm1 = sym.q_minus_one(t);
        out.s += t;
        out.delta = out.delta + qm1 + out.delta * qm1;
    }
    return out;
}

}  // namespace

double b_hat_multi_eval(const BerezinSymbol& sym, std::span<const cplx> z)
{
    const auto parts = multi_parts(sym, z);
    return std::exp(-parts.s) * (1.0 + parts.delta);
}

double H_n_eval(const BerezinSymbol& sym, cplx z)
{
    const double r = std::abs(z);
    const double t = r * r / 4.0;
    if (r <= kHSeriesRadius) {
        const auto& h = sym.h_series();
        double acc = 0.0;
        for (auto it = h.rbegin(); it != h.rend(); ++it) {
            acc = acc * t + *it;
        }
        return acc;
    }
    return one_minus_u_n(sym, t) / (-r * r);
}

double H_multi_eval(const BerezinSymbol& sym, std::span<const cplx> z)
{
    const auto parts = multi_parts(sym, z);
    if (parts.s == 0.0) {
        // 1 - b^ = |z|^2/4 + O(|z|^4) for every n and d.
        return -0.25;
    }
    const double one_minus = -std::expm1(-parts.s) - std::exp(-parts.s) * parts.delta;
    return one_minus / (-4.0 * parts.s);
}

double laplacian_gaussian_step(int k)
{
    return k <= 1 ? 0.1 : 0.1 * k;
}

double laplacian_gaussian_check(int k, std::span<const cplx> points)
{
    if (k < 0 || k > 6) {
        throw std::invalid_argument("laplacian_gaussian_check: need 0 <= k <= 6");
    }
    auto gaussian = [](cplx z) { return cplx(std::exp(-std::norm(z) / 4.0), 0.0); };
    const RationalPoly lag = laguerre_poly({k, 0});
    const double kfact = factorial(k).get_d();
    const double sign = k % 2 == 0 ? 1.0 : -1.0;
    double worst = 0.0;
    for (const cplx& z : points) {
        if (std::abs(z) > 6.0) {
            throw std::invalid_argument("laplacian_gaussian_check: sample points must satisfy |z| <= 6");
        }
        const double t = std::norm(z) / 4.0;
        const double expected = sign * kfact * lag.eval(t) * std::exp(-t);
        double actual = 0.0;
        if (k == 0) {
            actual = gaussian(z).real();
        } else {
            actual = fd_laplacian_power(gaussian, z, k, laplacian_gaussian_step(k)).value.real();
        }
        worst = std::max(worst, std::abs(actual - expected));
    }
    return worst;
}

}  // namespace polyfock
