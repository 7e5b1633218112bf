#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "polyfock/common.hpp"
#include "polyfock/exact_polynomials.hpp"
#include "polyfock/grid_function.hpp"
#include "polyfock/kernels.hpp"

namespace polyfock {

enum class BerezinMethod { quadrature, grid_convolution, multiplier };

std::string to_string(BerezinMethod method);
BerezinMethod parse_method(const std::string& name);

/// Operational parameters of the three Berezin transform routes.
struct BerezinConfig {
    FockOrder order;
    BerezinMethod method = BerezinMethod::quadrature;
    double truncation_radius = 6.0;
    int radial_nodes = 64;
    int angular_nodes = 64;
    /// Order-doubling acceptance: |fine - coarse| <= tolerance * max(1, |fine|).
    double tolerance = 1e-10;

    /// Smallest radius holding all but ~1e-12 of the mass of b_n: 6 + sqrt(2(n-1)).
    static double min_truncation_radius(int n);
    /// Minimum truncation radius; 64 x 64 nodes in one dimension, 16 x 16 per
    /// coordinate when d >= 2.
    static BerezinConfig defaults(FockOrder order, BerezinMethod method = BerezinMethod::quadrature);
    void validate() const;
};

/// Pointwise function on C^d. Must be safe to call concurrently.
using PointFunction = std::function<cplx(const ComplexPoint&)>;

/// Wraps a one-variable function as a PointFunction on C.
PointFunction on_plane(std::function<cplx(cplx)> f);

/// Discrete probability measure approximating dnu = b_n dlambda in one
/// coordinate: radial Gauss–Laguerre in t = r^2 times the angular trapezoid,
/// nodes beyond the truncation radius dropped and weights renormalized to 1.
struct NuRule {
    std::vector<cplx> points;
    std::vector<double> weights;
};
NuRule nu_rule(int n, int radial_nodes, int angular_nodes, double truncation_radius);

/// int f(z + w) b_{d,n}(w) dlambda(w), tensorized per coordinate for d >= 2.
/// Evaluated at (radial, angular) and at twice both node counts; returns the
/// finer estimate. Throws InsufficientQuadrature when the two disagree.
cplx berezin_quadrature(const BerezinConfig& cfg, const PointFunction& f, const ComplexPoint& z);

/// Reflected form int f(z - w) dnu(w). Equal to the translated form because
/// b_n is radial.
cplx berezin_quadrature_reflected(const BerezinConfig& cfg, const PointFunction& f, const ComplexPoint& z);

/// berezin_quadrature at every probe; OpenMP over probes when parallel.
std::vector<cplx> berezin_quadrature_batch(const BerezinConfig& cfg, const PointFunction& f,
                                           std::span<const ComplexPoint> probes,
                                           Execution exec = Execution::parallel);

/// f * b_n on the grid: b_n sampled at the grid spacing out to the truncation
/// radius, linear convolution through a zero-padded FFT. Values within the
/// truncation radius of the box edge are unreliable.
/// Throws GridError if R <= truncation radius (no reliable interior).
GridFunction berezin_convolve_grid(const BerezinConfig& cfg, const GridFunction& f);

/// Same discrete convolution summed directly, serially. O(N^2 K^2).
GridFunction berezin_convolve_direct(const BerezinConfig& cfg, const GridFunction& f);

/// Continuous angular frequency of DFT index k on an N-point axis over
/// [-R, R]: xi = pi k' / R with k' = k for k < N/2 and k - N otherwise.
double grid_frequency(int index, int resolution, double half_width);

/// b_n^ sampled at the grid's DFT frequencies, in DFT (unshifted) order.
GridFunction multiplier_symbol(const BerezinSymbol& sym, double half_width, int resolution);

/// Ratio threshold of the decay precondition: boundary max <= 1e-8 interior max.
inline constexpr double kDecayRatio = 1e-8;

/// DFT of f, pointwise product with b_n^ at the continuous frequencies,
/// inverse DFT. Throws GridError when f does not decay at the box edge.
GridFunction berezin_multiplier(const BerezinConfig& cfg, const GridFunction& f);

/// Dispatch on cfg.method for grid inputs (quadrature evaluates `pointwise`
/// at every sample of `f`'s grid).
GridFunction berezin_apply(const BerezinConfig& cfg, const GridFunction& f, const PointFunction* pointwise);

/// max over probes of |B_n f(z) - f(z)|, by quadrature.
double fixed_point_residual(const BerezinConfig& cfg, const PointFunction& f, std::span<const ComplexPoint> probes,
                            Execution exec = Execution::parallel);

/// |sum (B f) g h^2 - sum f (B g) h^2| with the grid convolution.
double duality_residual(const BerezinConfig& cfg, const GridFunction& f, const GridFunction& g);

/// max over probes of |B_{d,n} f(z) - f(z)| for d = 2.
double pluriharmonic_invariance_residual(const BerezinConfig& cfg, const PointFunction& f,
                                         std::span<const ComplexPoint> probes);

/// Second difference quotients of H_{d,n} at the origin along the first real
/// axis and along the main diagonal of R^{2d}, on a halving ladder of steps,
/// with their Richardson-extrapolated limits.
struct SmoothnessReport {
    int n = 1;
    int d = 1;
    std::vector<double> steps;
    std::vector<double> axis_quotients;
    std::vector<double> diagonal_quotients;
    double axis_limit = 0.0;
    double diagonal_limit = 0.0;
    double gap() const;
};
SmoothnessReport probe_H_multi_smoothness(int n, int d);

}  // namespace polyfock
