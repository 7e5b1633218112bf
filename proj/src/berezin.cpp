#include "polyfock/berezin.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <sstream>
#include <stdexcept>

#include "fft2d.hpp"
#include "polyfock/special_functions.hpp"

namespace polyfock {

std::string to_string(BerezinMethod method)
{
    switch (method) {
    case BerezinMethod::quadrature:
        return "quadrature";
    case BerezinMethod::grid_convolution:
        return "grid_convolution";
    case BerezinMethod::multiplier:
        return "multiplier";
    }
    return "unknown";
}

BerezinMethod parse_method(const std::string& name)
{
    if (name == "quadrature") {
        return BerezinMethod::quadrature;
    }
    if (name == "grid_convolution" || name == "grid-convolution" || name == "convolution") {
        return BerezinMethod::grid_convolution;
    }
    if (name == "multiplier") {
        return BerezinMethod::multiplier;
    }
    throw std::invalid_argument("unknown Berezin method '" + name + "'");
}

double BerezinConfig::min_truncation_radius(int n)
{
    return 6.0 + std::sqrt(2.0 * (n - 1));
}

BerezinConfig BerezinConfig::defaults(FockOrder order, BerezinMethod method)
{
    order.validate();
    BerezinConfig cfg;
    cfg.order = order;
    cfg.method = method;
    cfg.truncation_radius = min_truncation_radius(order.n);
    if (order.d >= 2) {
        cfg.radial_nodes = 16;
        cfg.angular_nodes = 16;
    }
    return cfg;
}

void BerezinConfig::validate() const
{
    order.validate();
    // Relative slack so that the default itself always passes.
    if (!(truncation_radius >= min_truncation_radius(order.n) * (1.0 - 1e-12))) {
        std::ostringstream msg;
        msg << "BerezinConfig: truncation radius " << truncation_radius << " is below 6 + sqrt(2(n-1)) = "
            << min_truncation_radius(order.n);
        throw std::invalid_argument(msg.str());
    }
    if (radial_nodes < 16 || angular_nodes < 16) {
        throw std::invalid_argument("BerezinConfig: need at least 16 radial and 16 angular nodes");
    }
    if (!(tolerance > 0.0)) {
        throw std::invalid_argument("BerezinConfig: tolerance must be positive");
    }
}

PointFunction on_plane(std::function<cplx(cplx)> f)
{
    return [f = std::move(f)](const ComplexPoint& p) { return f(p[0]); };
}

NuRule nu_rule(int n, int radial_nodes, int angular_nodes, double truncation_radius)
{
    const auto& radial = gauss_laguerre(radial_nodes);
    const auto angular = trapezoid_angular(angular_nodes);
    const double t_max = truncation_radius * truncation_radius;
    NuRule rule;
    double total = 0.0;
    for (std::size_t i = 0; i < radial.size(); ++i) {
        const double t = radial.nodes[i];
        if (t > t_max) {
            continue;
        }
        const double lag = laguerre1(n, t);
        const double radial_weight = radial.weights[i] * lag * lag / n;
        const double r = std::sqrt(t);
        for (std::size_t j = 0; j < angular.size(); ++j) {
            const double w = radial_weight * angular.weights[j];
            if (w == 0.0) {
                continue;  // node on a zero of L^1_{n-1}
            }
            rule.points.push_back(std::polar(r, angular.nodes[j]));
            rule.weights.push_back(w);
            total += w;
        }
    }
    for (double& w : rule.weights) {
        w /= total;
    }
    return rule;
}

namespace {

// sum over the tensor rule of prod_j w_{i_j} f(z + sign * p_{i_1}, ..., z + sign * p_{i_d}).
cplx apply_rule(const NuRule& rule, const PointFunction& f, const ComplexPoint& z, double sign)
{
    const std::size_t d = z.dimension();
    const std::size_t m = rule.points.size();
    ComplexPoint p(d);
    long double re = 0.0L;
    long double im = 0.0L;
    if (d == 1) {
        for (std::size_t k = 0; k < m; ++k) {
            p[0] = z[0] + sign * rule.points[k];
            const cplx v = rule.weights[k] * f(p);
            re += v.real();
            im += v.imag();
        }
        return {static_cast<double>(re), static_cast<double>(im)};
    }
    std::vector<std::size_t> idx(d, 0);
    while (true) {
        double w = 1.0;
        for (std::size_t j = 0; j < d; ++j) {
            w *= rule.weights[idx[j]];
            p[j] = z[j] + sign * rule.points[idx[j]];
        }
        const cplx v = w * f(p);
        re += v.real();
        im += v.imag();
        std::size_t j = d;
        while (j > 0) {
            --j;
            if (++idx[j] < m) {
                break;
            }
            idx[j] = 0;
            if (j == 0) {
                return {static_cast<double>(re), static_cast<double>(im)};
            }
        }
    }
}

struct RulePair {
    NuRule coarse;
    NuRule fine;
};

RulePair make_rules(const BerezinConfig& cfg)
{
    cfg.validate();
    return {nu_rule(cfg.order.n, cfg.radial_nodes, cfg.angular_nodes, cfg.truncation_radius),
            nu_rule(cfg.order.n, 2 * cfg.radial_nodes, 2 * cfg.angular_nodes, cfg.truncation_radius)};
}

cplx quadrature_with(const BerezinConfig& cfg, const RulePair& rules, const PointFunction& f,
                     const ComplexPoint& z, double sign)
{
    if (z.dimension() != static_cast<std::size_t>(cfg.order.d)) {
        throw std::invalid_argument("berezin_quadrature: probe dimension does not match d");
    }
    const cplx coarse = apply_rule(rules.coarse, f, z, sign);
    const cplx fine = apply_rule(rules.fine, f, z, sign);
    const double change = std::abs(fine - coarse);
    if (!(change <= cfg.tolerance * std::max(1.0, std::abs(fine)))) {
        std::ostringstream msg;
        msg << "berezin_quadrature: doubling " << cfg.radial_nodes << "x" << cfg.angular_nodes
            << " nodes changed the result by " << change << " (tolerance " << cfg.tolerance << ")";
        throw InsufficientQuadrature(msg.str());
    }
    return fine;
}

}  // namespace

cplx berezin_quadrature(const BerezinConfig& cfg, const PointFunction& f, const ComplexPoint& z)
{
    return quadrature_with(cfg, make_rules(cfg), f, z, 1.0);
}

cplx berezin_quadrature_reflected(const BerezinConfig& cfg, const PointFunction& f, const ComplexPoint& z)
{
    return quadrature_with(cfg, make_rules(cfg), f, z, -1.0);
}

std::vector<cplx> berezin_quadrature_batch(const BerezinConfig& cfg, const PointFunction& f,
                                           std::span<const ComplexPoint> probes, Execution exec)
{
    const RulePair rules = make_rules(cfg);
    std::vector<cplx> out(probes.size());
    if (exec == Execution::serial) {
        for (std::size_t i = 0; i < probes.size(); ++i) {
            out[i] = quadrature_with(cfg, rules, f, probes[i], 1.0);
        }
        return out;
    }
    std::exception_ptr failure;
    const auto count = static_cast<long>(probes.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < count; ++i) {
        try {
            out[i] = quadrature_with(cfg, rules, f, probes[i], 1.0);
        } catch (...) {
#pragma omp critical(polyfock_batch_failure)
            if (!failure) {
                failure = std::current_exception();
            }
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return out;
}

namespace {

void require_plane(const BerezinConfig& cfg, const char* what)
{
    cfg.validate();
    if (cfg.order.d != 1) {
        throw std::invalid_argument(std::string(what) + ": grids are two-dimensional, d must be 1");
    }
}

struct KernelStencil {
    int half = 0;  // samples run over offsets -half..half
    std::vector<double> values;
    double at(int di, int dj) const
    {
        const int width = 2 * half + 1;
        return values[static_cast<std::size_t>(dj + half) * width + (di + half)];
    }
};

// h^2 b_n(di h + i dj h) inside the truncation disk, zero outside.
KernelStencil sample_kernel(const BerezinConfig& cfg, double h)
{
    KernelStencil k;
    k.half = static_cast<int>(std::ceil(cfg.truncation_radius / h));
    const int width = 2 * k.half + 1;
    k.values.assign(static_cast<std::size_t>(width) * width, 0.0);
    const double t_max = cfg.truncation_radius * cfg.truncation_radius;
#pragma omp parallel for schedule(static)
    for (int j = 0; j < width; ++j) {
        for (int i = 0; i < width; ++i) {
            const cplx w((i - k.half) * h, (j - k.half) * h);
            if (std::norm(w) <= t_max) {
                k.values[static_cast<std::size_t>(j) * width + i] = h * h * b_density_1d(cfg.order.n, w);
            }
        }
    }
    return k;
}

void require_interior(const BerezinConfig& cfg, const GridFunction& f)
{
    if (!(f.half_width() > cfg.truncation_radius)) {
        std::ostringstream msg;
        msg << "grid half width " << f.half_width() << " must exceed the truncation radius "
            << cfg.truncation_radius << " (no reliable interior)";
        throw GridError(msg.str());
    }
}

void require_decay(const GridFunction& f, const char* what)
{
    const double interior = f.interior_max();
    if (!(f.boundary_max() <= kDecayRatio * interior)) {
        std::ostringstream msg;
        msg << what << ": input does not decay at the box edge (boundary max " << f.boundary_max()
            << ", interior max " << interior << ")";
        throw GridError(msg.str());
    }
}

int next_pow2(int v)
{
    int p = 1;
    while (p < v) {
        p <<= 1;
    }
    return p;
}

}  // namespace

GridFunction berezin_convolve_grid(const BerezinConfig& cfg, const GridFunction& f)
{
    require_plane(cfg, "berezin_convolve_grid");
    require_interior(cfg, f);
    const int n = f.resolution();
    const KernelStencil kernel = sample_kernel(cfg, f.spacing());
    const int width = 2 * kernel.half + 1;
    // Linear convolution length n + width - 1 fits without wrap-around.
    const int padded = next_pow2(n + width - 1);
    if (padded < n + width - 1) {
        throw GridError("berezin_convolve_grid: wrap-around guard violated");
    }

    detail::Fft2d signal(padded);
    detail::Fft2d response(padded);
    const auto total = static_cast<long>(padded) * padded;
#pragma omp parallel for schedule(static)
    for (long i = 0; i < total; ++i) {
        signal.data()[i] = 0.0;
        response.data()[i] = 0.0;
    }
#pragma omp parallel for schedule(static)
    for (int row = 0; row < n; ++row) {
        for (int col = 0; col < n; ++col) {
            signal.at(row, col) = f.at(row, col);
        }
    }
#pragma omp parallel for schedule(static)
    for (int j = 0; j < width; ++j) {
        for (int i = 0; i < width; ++i) {
            response.at(j, i) = kernel.at(i - kernel.half, j - kernel.half);
        }
    }
    signal.forward();
    response.forward();
    const double scale = 1.0 / (static_cast<double>(padded) * padded);
#pragma omp parallel for schedule(static)
    for (long i = 0; i < total; ++i) {
        signal.data()[i] *= response.data()[i] * scale;
    }
    signal.backward();

    std::vector<cplx> out(static_cast<std::size_t>(n) * n);
#pragma omp parallel for schedule(static)
    for (int row = 0; row < n; ++row) {
        for (int col = 0; col < n; ++col) {
            out[static_cast<std::size_t>(row) * n + col] = signal.at(row + kernel.half, col + kernel.half);
        }
    }
    return GridFunction(f.half_width(), n, std::move(out));
}

GridFunction berezin_convolve_direct(const BerezinConfig& cfg, const GridFunction& f)
{
    require_plane(cfg, "berezin_convolve_direct");
    require_interior(cfg, f);
    const int n = f.resolution();
    const KernelStencil kernel = sample_kernel(cfg, f.spacing());
    std::vector<cplx> out(static_cast<std::size_t>(n) * n);
    for (int row = 0; row < n; ++row) {
        for (int col = 0; col < n; ++col) {
            cplx acc = 0.0;
            for (int dj = -kernel.half; dj <= kernel.half; ++dj) {
                const int src_row = row - dj;
                if (src_row < 0 || src_row >= n) {
                    continue;
                }
                for (int di = -kernel.half; di <= kernel.half; ++di) {
                    const int src_col = col - di;
                    if (src_col < 0 || src_col >= n) {
                        continue;
                    }
                    acc += f.at(src_row, src_col) * kernel.at(di, dj);
                }
            }
            out[static_cast<std::size_t>(row) * n + col] = acc;
        }
    }
    return GridFunction(f.half_width(), n, std::move(out));
}

double grid_frequency(int index, int resolution, double half_width)
{
    const int signed_index = index < resolution / 2 ? index : index - resolution;
    return kPi * signed_index / half_width;
}

GridFunction multiplier_symbol(const BerezinSymbol& sym, double half_width, int resolution)
{
    std::vector<cplx> values(static_cast<std::size_t>(resolution) * resolution);
#pragma omp parallel for schedule(static)
    for (int row = 0; row < resolution; ++row) {
        const double xi_y = grid_frequency(row, resolution, half_width);
        for (int col = 0; col < resolution; ++col) {
            const double xi_x = grid_frequency(col, resolution, half_width);
            values[static_cast<std::size_t>(row) * resolution + col] = b_hat_eval(sym, cplx(xi_x, xi_y));
        }
    }
    return GridFunction(half_width, resolution, std::move(values));
}

GridFunction berezin_multiplier(const BerezinConfig& cfg, const GridFunction& f)
{
    require_plane(cfg, "berezin_multiplier");
    require_decay(f, "berezin_multiplier");
    const int n = f.resolution();
    const BerezinSymbol sym = compute_Qn(cfg.order.n);
    const GridFunction symbol = multiplier_symbol(sym, f.half_width(), n);

    detail::Fft2d buffer(n);
    std::copy(f.values().begin(), f.values().end(), buffer.data());
    buffer.forward();
    const auto total = static_cast<long>(n) * n;
    const double scale = 1.0 / static_cast<double>(total);
#pragma omp parallel for schedule(static)
    for (long i = 0; i < total; ++i) {
        buffer.data()[i] *= symbol.values()[i].real() * scale;
    }
    buffer.backward();
    return GridFunction(f.half_width(), n, std::vector<cplx>(buffer.data(), buffer.data() + total));
}

GridFunction berezin_apply(const BerezinConfig& cfg, const GridFunction& f, const PointFunction* pointwise)
{
    switch (cfg.method) {
    case BerezinMethod::grid_convolution:
        return berezin_convolve_grid(cfg, f);
    case BerezinMethod::multiplier:
        return berezin_multiplier(cfg, f);
    case BerezinMethod::quadrature:
        break;
    }
    if (pointwise == nullptr) {
        throw std::invalid_argument("berezin_apply: the quadrature method needs a pointwise function");
    }
    const int n = f.resolution();
    std::vector<ComplexPoint> probes;
    probes.reserve(static_cast<std::size_t>(n) * n);
    for (int row = 0; row < n; ++row) {
        for (int col = 0; col < n; ++col) {
            probes.push_back(ComplexPoint{f.point(row, col)});
        }
    }
    return GridFunction(f.half_width(), n, berezin_quadrature_batch(cfg, *pointwise, probes));
}

double fixed_point_residual(const BerezinConfig& cfg, const PointFunction& f, std::span<const ComplexPoint> probes,
                            Execution exec)
{
    const auto transformed = berezin_quadrature_batch(cfg, f, probes, exec);
    double worst = 0.0;
    for (std::size_t i = 0; i < probes.size(); ++i) {
        worst = std::max(worst, std::abs(transformed[i] - f(probes[i])));
    }
    return worst;
}

double duality_residual(const BerezinConfig& cfg, const GridFunction& f, const GridFunction& g)
{
    if (!f.conformable(g)) {
        throw GridError("duality_residual: grids are not conformable");
    }
    require_decay(f, "duality_residual");
    require_decay(g, "duality_residual");
    const GridFunction bf = berezin_convolve_grid(cfg, f);
    const GridFunction bg = berezin_convolve_grid(cfg, g);
    const double area = f.spacing() * f.spacing();
    long double re = 0.0L;
    long double im = 0.0L;
    for (std::size_t i = 0; i < f.values().size(); ++i) {
        const cplx diff = bf.values()[i] * g.values()[i] - f.values()[i] * bg.values()[i];
        re += diff.real();
        im += diff.imag();
    }
    return std::abs(cplx(static_cast<double>(re), static_cast<double>(im))) * area;
}

double pluriharmonic_invariance_residual(const BerezinConfig& cfg, const PointFunction& f,
                                         std::span<const ComplexPoint> probes)
{
    if (cfg.order.d != 2) {
        throw std::invalid_argument("pluriharmonic_invariance_residual: d must be 2");
    }
    return fixed_point_residual(cfg, f, probes);
}

double SmoothnessReport::gap() const
{
    return std::abs(axis_limit - diagonal_limit);
}

namespace {

double richardson_limit(std::vector<double> q)
{
    // q(s) = c0 + c1 s^2 + c2 s^4 + ..., steps halving.
    double factor = 4.0;
    while (q.size() > 1) {
        std::vector<double> next(q.size() - 1);
        for (std::size_t i = 0; i + 1 < q.size(); ++i) {
            next[i] = (factor * q[i + 1] - q[i]) / (factor - 1.0);
        }
        q = std::move(next);
        factor *= 4.0;
    }
    return q.front();
}

}  // namespace

SmoothnessReport probe_H_multi_smoothness(int n, int d)
{
    if (n < 1 || d < 1) {
        throw std::invalid_argument("probe_H_multi_smoothness: need n >= 1 and d >= 1");
    }
    const BerezinSymbol sym = compute_Qn(n);
    SmoothnessReport report;
    report.n = n;
    report.d = d;
    report.steps = {0.4, 0.2, 0.1, 0.05};

    const std::vector<cplx> origin(static_cast<std::size_t>(d), cplx(0.0, 0.0));
    const double h0 = H_multi_eval(sym, origin);
    std::vector<cplx> axis(static_cast<std::size_t>(d), cplx(0.0, 0.0));
    axis[0] = 1.0;
    // Main diagonal of R^{2d}: every real coordinate equal.
    const double c = 1.0 / std::sqrt(2.0 * d);
    const std::vector<cplx> diagonal(static_cast<std::size_t>(d), cplx(c, c));

    auto quotient = [&](const std::vector<cplx>& dir, double s) {
        std::vector<cplx> plus(dir.size());
        std::vector<cplx> minus(dir.size());
        for (std::size_t j = 0; j < dir.size(); ++j) {
            plus[j] = s * dir[j];
            minus[j] = -s * dir[j];
        }
        return (H_multi_eval(sym, plus) - 2.0 * h0 + H_multi_eval(sym, minus)) / (s * s);
    };
    for (double s : report.steps) {
        report.axis_quotients.push_back(quotient(axis, s));
        report.diagonal_quotients.push_back(quotient(diagonal, s));
    }
    report.axis_limit = richardson_limit(report.axis_quotients);
    report.diagonal_limit = richardson_limit(report.diagonal_quotients);
    return report;
}

}  // namespace polyfock
