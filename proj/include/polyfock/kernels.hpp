#pragma once

#include <initializer_list>
#include <span>
#include <vector>

#include "polyfock/common.hpp"
#include "polyfock/quadrature.hpp"

namespace polyfock {

/// Polyanalytic order n and complex dimension d of F^2_n(C^d).
struct FockOrder {
    int n = 1;
    int d = 1;

    void validate() const;
};

/// A point of C^d.
class ComplexPoint {
public:
    ComplexPoint() = default;
    explicit ComplexPoint(std::size_t dimension) : coords_(dimension) {}
    ComplexPoint(std::initializer_list<cplx> coords) : coords_(coords) {}
    explicit ComplexPoint(std::vector<cplx> coords) : coords_(std::move(coords)) {}

    std::size_t dimension() const { return coords_.size(); }
    cplx& operator[](std::size_t j) { return coords_[j]; }
    const cplx& operator[](std::size_t j) const { return coords_[j]; }
    std::span<const cplx> coords() const { return coords_; }
    std::span<cplx> coords() { return coords_; }
    bool finite() const;

private:
    std::vector<cplx> coords_;
};

/// mantissa * exp(log_scale); keeps e^{z conj(w)} representable far past
/// the double range.
struct ScaledComplex {
    cplx mantissa;
    double log_scale = 0.0;

    cplx value() const;
    double log_abs() const;
};

/// L^1_{n-1}(t) in double (recurrence).
double laguerre1(int n, double t);

/// K_{d,n}(z, w) = prod_j L^1_{n-1}(|z_j - w_j|^2) e^{z_j conj(w_j)}.
ScaledComplex kernel_K(FockOrder order, const ComplexPoint& z, const ComplexPoint& w);

/// k^n_z(w) = K(w, z) / sqrt(K(z, z)).
ScaledComplex normalized_kernel(FockOrder order, const ComplexPoint& z, const ComplexPoint& w);

/// b_n(z) = e^{-|z|^2} L^1_{n-1}(|z|^2)^2 / (n pi) for one coordinate.
double b_density_1d(int n, cplx z);

/// b_{d,n}(z) = prod_j b_n(z_j).
double b_density(FockOrder order, const ComplexPoint& z);

/// |int b_{d,n} dlambda_d - 1|, with the tensorized radial Gauss–Laguerre
/// rule `quad` (weight e^{-t}, t = r^2). Throws InsufficientQuadrature when
/// doubling the rule moves the integral by more than tol.
double normalization_residual(FockOrder order, const QuadratureRule& quad, double tol = 1e-12);

/// int |k^n_z|^2 dmu, integrated over w = z + sqrt(t) e^{i theta} with a
/// radial Gauss–Laguerre x angular trapezoid rule.
double normalized_kernel_mass(int n, cplx z, int radial_nodes = 64, int angular_nodes = 64);

}  // namespace polyfock
