#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace polyfock {

enum class QuadratureKind { gauss_laguerre_radial, trapezoid_angular, tensor };

/// Nodes and positive weights. Tensor rules store `dimension` coordinates per
/// node, flattened; one-dimensional rules have dimension 1.
struct QuadratureRule {
    QuadratureKind kind = QuadratureKind::gauss_laguerre_radial;
    std::size_t dimension = 1;
    double alpha = 0.0;  // Laguerre weight exponent, radial rules only
    int order = 0;       // requested node count; underflowed weights are dropped
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const { return weights.size(); }
    std::span<const double> node(std::size_t i) const
    {
        return {nodes.data() + i * dimension, dimension};
    }
    /// Throws std::logic_error when the invariants are broken.
    void validate() const;
};

/// Generalized Gauss–Laguerre rule for the weight t^alpha e^{-t} on (0, inf).
/// Rules are memoized behind a mutex; the returned reference stays valid.
const QuadratureRule& gauss_laguerre(int n, double alpha = 0.0);

/// Trapezoid rule on [0, 2 pi) with m equally spaced nodes and weights 1/m
/// (normalized to the angular mean).
QuadratureRule trapezoid_angular(int m);

/// Cartesian product of two one-dimensional rules.
QuadratureRule tensor(const QuadratureRule& a, const QuadratureRule& b);

}  // namespace polyfock
