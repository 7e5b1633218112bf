#include "polyfock/kernels.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "polyfock/special_functions.hpp"

namespace polyfock {

void FockOrder::validate() const
{
    if (n < 1) {
        throw std::invalid_argument("FockOrder: n must be >= 1");
    }
    if (d < 1) {
        throw std::invalid_argument("FockOrder: d must be >= 1");
    }
}

bool ComplexPoint::finite() const
{
    for (const cplx& c : coords_) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
            return false;
        }
    }
    return true;
}

cplx ScaledComplex::value() const
{
    return mantissa * std::exp(log_scale);
}

double ScaledComplex::log_abs() const
{
    return std::log(std::abs(mantissa)) + log_scale;
}

double laguerre1(int n, double t)
{
    return laguerre_recurrence({n - 1, 1}, t);
}

namespace {

void check_dims(FockOrder order, const ComplexPoint& z, const ComplexPoint& w)
{
    order.validate();
    if (z.dimension() != static_cast<std::size_t>(order.d) || w.dimension() != z.dimension()) {
        throw std::invalid_argument("kernel: point dimension does not match the Fock order");
    }
}

// Components of z conj(w), spelled out so that swapping z and w gives the same
// real part and the exactly negated imaginary part.
double re_z_conj_w(cplx z, cplx w)
{
    return z.real() * w.real() + z.imag() * w.imag();
}

double im_z_conj_w(cplx z, cplx w)
{
    return z.imag() * w.real() - z.real() * w.imag();
}

}  // namespace

ScaledComplex kernel_K(FockOrder order, const ComplexPoint& z, const ComplexPoint& w)
{
    check_dims(order, z, w);
    double lag = 1.0;
    double log_scale = 0.0;
    double phase = 0.0;
    for (std::size_t j = 0; j < z.dimension(); ++j) {
        lag *= laguerre1(order.n, std::norm(z[j] - w[j]));
        log_scale += re_z_conj_w(z[j], w[j]);
        phase += im_z_conj_w(z[j], w[j]);
    }
    return {cplx(lag * std::cos(phase), lag * std::sin(phase)), log_scale};
}

ScaledComplex normalized_kernel(FockOrder order, const ComplexPoint& z, const ComplexPoint& w)
{
    const ScaledComplex k_wz = kernel_K(order, w, z);
    // K(z, z) = n^d e^{|z|^2}.
    double norm_z = 0.0;
    for (const cplx& c : z.coords()) {
        norm_z += std::norm(c);
    }
    const double root_n = std::pow(static_cast<double>(order.n), 0.5 * order.d);
    return {k_wz.mantissa / root_n, k_wz.log_scale - 0.5 * norm_z};
}

double b_density_1d(int n, cplx z)
{
    const double t = std::norm(z);
    const double lag = laguerre1(n, t);
    return std::exp(-t) * lag * lag / (n * kPi);
}

double b_density(FockOrder order, const ComplexPoint& z)
{
    order.validate();
    if (z.dimension() != static_cast<std::size_t>(order.d)) {
        throw std::invalid_argument("b_density: point dimension does not match d");
    }
    double out = 1.0;
    for (const cplx& c : z.coords()) {
        out *= b_density_1d(order.n, c);
    }
    return out;
}

namespace {

// int b_{d,n} dlambda = prod over coordinates of (1/n) int e^{-t} L(t)^2 dt,
// here summed as a genuine d-fold tensor over the radial nodes.
double tensor_mass(FockOrder order, const QuadratureRule& quad)
{
    std::vector<double> radial(quad.size());
    for (std::size_t i = 0; i < quad.size(); ++i) {
        const double lag = laguerre1(order.n, quad.nodes[i]);
        radial[i] = quad.weights[i] * lag * lag / order.n;
    }
    if (order.d > 3) {
        double mass = 1.0;
        double one_dim = 0.0;
        for (double r : radial) {
            one_dim += r;
        }
        for (int j = 0; j < order.d; ++j) {
            mass *= one_dim;
        }
        return mass;
    }
    std::vector<double> partial = radial;
    for (int dim = 1; dim < order.d; ++dim) {
        std::vector<double> next;
        next.reserve(partial.size() * radial.size());
        for (double p : partial) {
            for (double r : radial) {
                next.push_back(p * r);
            }
        }
        partial = std::move(next);
    }
    double mass = 0.0;
    for (double p : partial) {
        mass += p;
    }
    return mass;
}

}  // namespace

double normalization_residual(FockOrder order, const QuadratureRule& quad, double tol)
{
    order.validate();
    if (quad.kind != QuadratureKind::gauss_laguerre_radial || quad.alpha != 0.0) {
        throw std::invalid_argument("normalization_residual: needs a Gauss-Laguerre rule with alpha = 0");
    }
    const double coarse = tensor_mass(order, quad);
    const double fine = tensor_mass(order, gauss_laguerre(2 * quad.order));
    if (std::abs(fine - coarse) > tol) {
        std::ostringstream msg;
        msg << "normalization_residual(n=" << order.n << ", d=" << order.d
            << "): doubling moved the mass by " << std::abs(fine - coarse);
        throw InsufficientQuadrature(msg.str());
    }
    return std::abs(fine - 1.0);
}

double normalized_kernel_mass(int n, cplx z, int radial_nodes, int angular_nodes)
{
    const FockOrder order{n, 1};
    const auto& radial = gauss_laguerre(radial_nodes);
    const auto angular = trapezoid_angular(angular_nodes);
    const ComplexPoint zp{z};
    double mass = 0.0;
    for (std::size_t i = 0; i < radial.size(); ++i) {
        const double t = radial.nodes[i];
        const double r = std::sqrt(t);
        double ring = 0.0;
        for (std::size_t j = 0; j < angular.size(); ++j) {
            const cplx w = z + std::polar(r, angular.nodes[j]);
            const ScaledComplex k = normalized_kernel(order, zp, ComplexPoint{w});
            // |k|^2 e^{-|w|^2} / pi, with the Gauss–Laguerre weight e^{-t} divided out.
            const double log_density = 2.0 * k.log_scale - std::norm(w) + t;
            ring += angular.weights[j] * std::norm(k.mantissa) * std::exp(log_density) / kPi;
        }
        // dlambda = (1/2) dt dtheta, and the angular weights average over 2 pi.
        mass += radial.weights[i] * ring * kPi;
    }
    return mass;
}

}  // namespace polyfock
