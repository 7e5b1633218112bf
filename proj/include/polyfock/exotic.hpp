#pragma once

#include <span>
#include <vector>

#include <json.hpp>

#include "polyfock/berezin.hpp"
#include "polyfock/common.hpp"
#include "polyfock/rational_poly.hpp"

namespace polyfock {

/// f_a(z) = exp(a Re z_1). Not harmonic for a != 0: Laplacian f_a = a^2 f_a.
struct ExponentialSymbol {
    cplx a;

    explicit ExponentialSymbol(cplx a);
    cplx operator()(cplx z) const { return std::exp(a * z.real()); }
    PointFunction as_point_function() const;
};

/// Exact P_k with I_k(a) = P_k(a) e^{a^2/4}; parity of P_k is that of k.
RationalPoly moment_polynomial(int k);

/// I_k(a) = pi^{-1/2} int x^k e^{ax - x^2} dx by the moment recurrence. k <= 40.
cplx gaussian_moment_I(int k, cplx a);

/// S_m(a) = sum_j C(m, j) I_{2(m-j)}(0) I_{2j}(a). m <= 20.
cplx s_coefficient(int m, cplx a);

/// B_n f_a(z) from the double binomial sum over S_{k+l}(a). n <= 10.
cplx berezin_exponential_closed_form(int n, cplx a, const ComplexPoint& z);

/// Exact polynomial P with B_n f_a = P(a^2) e^{a^2/4} f_a. P(0) = 1. n <= 10.
RationalPoly multiplier_polynomial_P(int n);

/// |e^{-z/4} - P(z)| evaluated in extended precision.
double exotic_residual(const RationalPoly& p, cplx z);

/// Certified nonzero root of e^{-z/4} = P(z).
struct RootCertificate {
    int n = 1;
    cplx root;
    double residual = 0.0;
    int newton_steps = 0;
    cplx seed;

    static constexpr double kMaxResidual = 1e-10;

    /// Principal square root of the root; f_a is then a fixed point of B_n.
    cplx a() const { return std::sqrt(root); }
    /// Recomputes the residual from scratch; throws std::invalid_argument on failure.
    void validate() const;
};

/// {n, root_re, root_im, residual, a_re, a_im}.
void to_json(nlohmann::json& j, const RootCertificate& cert);
/// Re-validates the residual; throws std::invalid_argument when it exceeds 1e-10.
void from_json(const nlohmann::json& j, RootCertificate& cert);

/// Nonzero roots in |z| <= radius: winding numbers on unit sub-squares
/// (subdivided while a square holds several zeros), then damped Newton.
/// Sorted by imaginary then real part and cut to max_roots.
/// Throws NoRootFound when the disk holds no nonzero root. n <= 6.
std::vector<RootCertificate> find_exotic_roots(int n, double search_radius, int max_roots = 64,
                                               Execution exec = Execution::parallel);

/// Winding number of e^{-z/4} - P(z) around the square [x0, x0+side] x [y0, y0+side].
int exotic_winding_number(const RationalPoly& p, double x0, double y0, double side);

struct ExoticVerification {
    cplx a;
    /// Quadrature relative residual; only computed when |a| <= kQuadratureLimit.
    bool quadrature_checked = false;
    double quadrature_residual = 0.0;
    double closed_form_residual = 0.0;
    /// Relative |Laplacian f_a - a^2 f_a| at the probes (shows f_a is not harmonic).
    double laplacian_residual = 0.0;
    /// e^{|Re a| (|z| + T)} would leave the double range somewhere in the integral.
    bool overflow_warning = false;

    static constexpr double kQuadratureLimit = 6.0;

    /// Quadrature residual when checked, else the closed-form one.
    double residual() const { return quadrature_checked ? quadrature_residual : closed_form_residual; }
};

/// Fixed-point residual max_z |B_n f_a(z) - f_a(z)| / |f_a(z)| over probes |z| <= 1.
/// Requires cfg.truncation_radius >= 8 + |a|.
ExoticVerification verify_exotic_fixed_point(int n, const ExponentialSymbol& f, std::span<const ComplexPoint> probes,
                                             const BerezinConfig& cfg);
/// Same with a = principal square root of the certified root.
ExoticVerification verify_exotic_fixed_point(const RootCertificate& cert, std::span<const ComplexPoint> probes,
                                             const BerezinConfig& cfg);

/// Quadrature configuration wide enough for f_a: truncation 8 + |a|.
BerezinConfig exotic_quadrature_config(int n, cplx a);

/// {0, 1/2, i/2, (1+i)/2}.
std::vector<ComplexPoint> standard_exotic_probes();

/// max relative |Laplacian f_a - a^2 f_a| by finite differences.
double exponential_laplacian_residual(cplx a, std::span<const cplx> points);

}  // namespace polyfock
