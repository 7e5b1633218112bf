#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <sstream>

#include "polyfock/cli.hpp"
#include "polyfock/exact_polynomials.hpp"
#include "polyfock/exotic.hpp"
#include "polyfock/special_functions.hpp"

namespace polyfock::cli {

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t elapsed_ms(Clock::time_point start)
{
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
}

// Runs a check body; any exception becomes a failed check carrying the message.
template <class Body>
void guarded(RunReport& report, const std::string& name, double expected, double tolerance, Body body)
{
    try {
        report.checks.push_back(body());
    } catch (const std::exception& e) {
        report.checks.push_back(Check::failed(name, expected, tolerance, e.what()));
    }
}

void record_config(RunReport& report, const BerezinConfig& cfg)
{
    report.parameters["tolerance"] = cfg.tolerance;
    report.parameters["radial_nodes"] = cfg.radial_nodes;
    report.parameters["angular_nodes"] = cfg.angular_nodes;
    report.parameters["truncation_radius"] = cfg.truncation_radius;
}

std::string tag(int n)
{
    return "n" + std::to_string(n) + ".";
}

}  // namespace

BerezinConfig Overrides::apply(BerezinConfig cfg) const
{
    if (tolerance) {
        cfg.tolerance = *tolerance;
    }
    if (radial_nodes) {
        cfg.radial_nodes = *radial_nodes;
    }
    if (angular_nodes) {
        cfg.angular_nodes = *angular_nodes;
    }
    if (truncation_radius) {
        cfg.truncation_radius = *truncation_radius;
    }
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (grid_n && (*grid_n < 8 || *grid_n % 2 != 0 || *grid_n > 4096)) {
        throw UsageError("--grid-n must be an even integer in [8, 4096]");
    }
    if (grid_r && !(*grid_r > 0.0)) {
        throw UsageError("--grid-r must be positive");
    }
    return cfg;
}

std::optional<std::function<cplx(cplx)>> catalog_function(const std::string& name)
{
    if (name == "one") {
        return [](cplx) { return cplx(1.0, 0.0); };
    }
    if (name == "re_w") {
        return [](cplx w) { return cplx(w.real(), 0.0); };
    }
    if (name == "re_w3") {
        return [](cplx w) { return cplx((w * w * w).real(), 0.0); };
    }
    if (name == "abs2") {
        return [](cplx w) { return cplx(std::norm(w), 0.0); };
    }
    if (name == "gauss") {
        return [](cplx w) { return cplx(std::exp(-std::norm(w)), 0.0); };
    }
    if (name == "bump") {
        return [](cplx w) { return cplx(std::exp(-4.0 * std::norm(w)), 0.0); };
    }
    return std::nullopt;
}

RunReport cmd_identities(int n_max, const Overrides& ov)
{
    const auto start = Clock::now();
    if (n_max < 1 || n_max > 8) {
        throw UsageError("identities: --n-max must lie in [1, 8]");
    }
    const BerezinConfig cfg = ov.apply(BerezinConfig::defaults({1, 1}));
    RunReport report;
    report.command = "identities";
    report.parameters["n_max"] = n_max;
    record_config(report, cfg);
    const QuadratureRule& radial = gauss_laguerre(cfg.radial_nodes);

    for (int n = 1; n <= n_max; ++n) {
        const std::string t = tag(n);
        guarded(report, t + "q_constant_exact", 1.0, 0.0, [&] {
            const Rational c0 = compute_Qn(n).q_poly().coeff(0);
            return Check::abs_diff(t + "q_constant_exact", 1.0, c0 == 1 ? 1.0 : c0.get_d(), 0.0);
        });
        guarded(report, t + "normalization", 0.0, 1e-10, [&] {
            return Check::at_most(t + "normalization", normalization_residual({n, 1}, radial), 1e-10);
        });
        guarded(report, t + "u_bound", 0.0, 1.0 - 1e-12, [&] {
            const BerezinSymbol sym = compute_Qn(n);
            double worst = 0.0;
            constexpr int kSamples = 200;
            for (int i = 0; i < kSamples; ++i) {
                const double x = 1e-3 * std::pow(1e5, static_cast<double>(i) / (kSamples - 1));
                worst = std::max(worst, std::abs(u_n_eval(sym, x)));
            }
            return Check::at_most(t + "u_bound", worst, 1.0 - 1e-12);
        });
        guarded(report, t + "u_two_forms", 0.0, 1e-8, [&] {
            const BerezinSymbol sym = compute_Qn(n);
            double worst = 0.0;
            for (double x : {0.1, 0.5, 1.0, 2.0, 4.0}) {
                worst = std::max(worst, std::abs(u_n_eval(sym, x) - u_n_bessel_form(n, x, radial)));
            }
            return Check::at_most(t + "u_two_forms", worst, 1e-8);
        });
    }
    // Beyond k = 10 the integral reaches k! ~ 1e7 and 1e-8 is below double rounding.
    for (int k = 0; k <= 10; ++k) {
        const std::string name = "laguerre_bessel.k" + std::to_string(k);
        guarded(report, name, 0.0, 1e-8, [&] {
            double worst = 0.0;
            for (double x : {0.0, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0}) {
                worst = std::max(worst, laguerre_bessel_residual(k, x, radial));
            }
            return Check::at_most(name, worst, 1e-8);
        });
    }
    report.wall_time_ms = elapsed_ms(start);
    return report;
}

RunReport cmd_qn(int n, const Overrides&)
{
    const auto start = Clock::now();
    if (n < 1 || n > 12) {
        throw UsageError("qn: --n must lie in [1, 12]");
    }
    RunReport report;
    report.command = "qn";
    report.parameters["n"] = n;
    const BerezinSymbol sym = compute_Qn(n);
    report.results["coefficients"] = sym.q_poly().to_fraction_strings();
    report.results["degree"] = sym.q_poly().degree();
    const Rational c0 = sym.q_poly().coeff(0);
    report.checks.push_back(Check::abs_diff("q_constant_exact", 1.0, c0 == 1 ? 1.0 : c0.get_d(), 0.0));
    report.checks.push_back(
        Check::abs_diff("degree", 2.0 * (n - 1), static_cast<double>(sym.q_poly().degree()), 0.0));
    report.wall_time_ms = elapsed_ms(start);
    return report;
}

namespace {

// Closed form of B_n f for catalog entries where one is known.
std::optional<std::function<cplx(cplx)>> catalog_transform(const std::string& name)
{
    if (name == "one" || name == "re_w" || name == "re_w3") {
        return catalog_function(name);
    }
    if (name == "abs2") {
        return [](cplx z) { return cplx(std::norm(z) + 1.0, 0.0); };
    }
    return std::nullopt;
}

std::vector<std::pair<int, int>> probe_lattice(const GridFunction& g, double band, int per_axis)
{
    const double limit = g.half_width() - band;
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < per_axis; ++i) {
        const double y = -limit + 2.0 * limit * i / (per_axis - 1);
        for (int j = 0; j < per_axis; ++j) {
            const double x = -limit + 2.0 * limit * j / (per_axis - 1);
            out.emplace_back(g.nearest_index(y), g.nearest_index(x));
        }
    }
    return out;
}

}  // namespace

RunReport cmd_berezin(const BerezinRequest& req, const Overrides& ov)
{
    const auto start = Clock::now();
    if (req.n < 1 || req.n > 12) {
        throw UsageError("berezin: --n must lie in [1, 12]");
    }
    if (req.function.empty() == req.input_path.empty()) {
        throw UsageError("berezin: give exactly one of --function and --input");
    }
    std::optional<std::function<cplx(cplx)>> f;
    if (!req.function.empty()) {
        f = catalog_function(req.function);
        if (!f) {
            throw UsageError("berezin: unknown function '" + req.function +
                             "' (catalog: one, re_w, re_w3, abs2, gauss, bump)");
        }
    } else if (req.method == BerezinMethod::quadrature) {
        throw UsageError("berezin: the quadrature method needs a catalog --function, not a grid --input");
    }
    const BerezinConfig cfg = ov.apply(BerezinConfig::defaults({req.n, 1}, req.method));
    const double grid_r = ov.grid_r.value_or(12.0);
    const int grid_n = ov.grid_n.value_or(req.method == BerezinMethod::quadrature ? 64 : 256);

    RunReport report;
    report.command = "berezin";
    report.parameters["n"] = req.n;
    report.parameters["method"] = to_string(req.method);
    record_config(report, cfg);
    report.parameters["crosscheck"] = req.crosscheck;

    GridFunction input = [&] {
        if (f) {
            report.parameters["function"] = req.function;
            report.parameters["grid_r"] = grid_r;
            report.parameters["grid_n"] = grid_n;
            return GridFunction::sample(grid_r, grid_n, *f);
        }
        report.parameters["input"] = req.input_path;
        GridFunction g = read_bgf(std::filesystem::path(req.input_path));
        report.parameters["grid_r"] = g.half_width();
        report.parameters["grid_n"] = g.resolution();
        return g;
    }();

    const PointFunction pointwise = f ? on_plane(*f) : PointFunction{};
    std::optional<GridFunction> applied;
    try {
        applied = berezin_apply(cfg, input, f ? &pointwise : nullptr);
    } catch (const GridError& e) {
        throw UsageError(std::string("berezin: ") + e.what());
    } catch (const InsufficientQuadrature& e) {
        // Numerical non-convergence is a failed check, not a usage problem.
        report.checks.push_back(Check::failed("transform_converged", 0.0, cfg.tolerance, e.what()));
        report.wall_time_ms = elapsed_ms(start);
        return report;
    }
    const GridFunction& out = *applied;

    // Grid methods are unreliable within the truncation radius of the edge.
    const double band = req.method == BerezinMethod::quadrature ? 0.0 : cfg.truncation_radius;
    const auto interior = out.interior_indices(band);
    report.results["interior_samples"] = interior.size();

    if (f) {
        if (const auto exact = catalog_transform(req.function)) {
            guarded(report, "transform_vs_closed_form", 0.0, 1e-9, [&] {
                double worst = 0.0;
                for (const auto& [row, col] : interior) {
                    worst = std::max(worst, std::abs(out.at(row, col) - (*exact)(out.point(row, col))));
                }
                return Check::at_most("transform_vs_closed_form", worst, 1e-9);
            });
        }
        const bool harmonic = req.function == "one" || req.function == "re_w" || req.function == "re_w3";
        if (harmonic) {
            guarded(report, "fixed_point_residual", 0.0, 1e-9, [&] {
                double worst = 0.0;
                for (const auto& [row, col] : interior) {
                    worst = std::max(worst, std::abs(out.at(row, col) - input.at(row, col)));
                }
                return Check::at_most("fixed_point_residual", worst, 1e-9);
            });
        }
        if (req.function == "abs2") {
            const int mid = out.resolution() / 2;
            // Sample nearest the origin; B_n|w|^2 - |w|^2 = 1 everywhere.
            guarded(report, "residual_near_origin", 1.0, 1e-8, [&] {
                const cplx diff = out.at(mid, mid) - input.at(mid, mid);
                return Check::abs_diff("residual_near_origin", 1.0, diff.real(), 1e-8);
            });
        }
    }

    if (req.crosscheck) {
        if (band > 0.0 && interior.empty()) {
            throw UsageError("berezin: grid too small for a cross-check interior");
        }
        const double cross_band = std::max(band, cfg.truncation_radius);
        const auto probes = probe_lattice(input, cross_band, 5);
        std::map<std::string, std::vector<cplx>> values;
        auto at_probes = [&](const GridFunction& g) {
            std::vector<cplx> v;
            for (const auto& [row, col] : probes) {
                v.push_back(g.at(row, col));
            }
            return v;
        };
        BerezinConfig grid_cfg = cfg;
        grid_cfg.method = BerezinMethod::grid_convolution;
        values["grid_convolution"] = at_probes(berezin_convolve_grid(grid_cfg, input));
        if (input.boundary_max() <= kDecayRatio * input.interior_max()) {
            values["multiplier"] = at_probes(berezin_multiplier(grid_cfg, input));
        } else {
            report.results["crosscheck_skipped"] = "multiplier: input does not decay at the box edge";
        }
        if (f) {
            BerezinConfig quad_cfg = BerezinConfig::defaults({req.n, 1});
            quad_cfg.tolerance = cfg.tolerance;
            std::vector<ComplexPoint> points;
            for (const auto& [row, col] : probes) {
                points.push_back(ComplexPoint{input.point(row, col)});
            }
            values["quadrature"] = berezin_quadrature_batch(quad_cfg, pointwise, points);
        }
        for (auto a = values.begin(); a != values.end(); ++a) {
            for (auto b = std::next(a); b != values.end(); ++b) {
                double worst = 0.0;
                for (std::size_t i = 0; i < probes.size(); ++i) {
                    worst = std::max(worst, std::abs(a->second[i] - b->second[i]));
                }
                report.checks.push_back(Check::at_most("method_delta." + a->first + "-" + b->first, worst, 1e-4));
            }
        }
    }

    if (!req.output_path.empty()) {
        const std::filesystem::path bgf(req.output_path);
        std::filesystem::path csv(req.csv_path);
        if (csv.empty()) {
            csv = bgf;
            csv.replace_extension(".csv");
        }
        write_bgf(bgf, out);
        write_csv(csv, out, out.resolution() / 2);
        report.results["output"] = bgf.string();
        report.results["csv"] = csv.string();
    } else if (!req.csv_path.empty()) {
        write_csv(std::filesystem::path(req.csv_path), out, out.resolution() / 2);
        report.results["csv"] = req.csv_path;
    }
    report.wall_time_ms = elapsed_ms(start);
    return report;
}

RunReport cmd_exotic(int n, double search_radius, int max_roots, const Overrides& ov)
{
    const auto start = Clock::now();
    if (n < 1 || n > 6) {
        throw UsageError("exotic: --n must lie in [1, 6]");
    }
    if (!(search_radius > 0.0) || search_radius > 400.0) {
        throw UsageError("exotic: --radius must lie in (0, 400]");
    }
    if (max_roots < 1) {
        throw UsageError("exotic: --max-roots must be positive");
    }
    RunReport report;
    report.command = "exotic";
    report.parameters["n"] = n;
    report.parameters["radius"] = search_radius;
    report.parameters["max_roots"] = max_roots;

    std::vector<RootCertificate> roots;
    try {
        roots = find_exotic_roots(n, search_radius, max_roots);
    } catch (const NoRootFound& e) {
        report.empty_result = true;
        report.results["certificates"] = nlohmann::json::array();
        report.results["advisory"] = e.what();
        report.wall_time_ms = elapsed_ms(start);
        return report;
    }
    report.results["certificates"] = roots;
    const auto probes = standard_exotic_probes();
    for (std::size_t i = 0; i < roots.size(); ++i) {
        const RootCertificate& cert = roots[i];
        const std::string t = "root" + std::to_string(i) + ".";
        report.checks.push_back(Check::at_most(t + "residual", cert.residual, RootCertificate::kMaxResidual));
        BerezinConfig cfg = exotic_quadrature_config(n, cert.a());
        if (ov.tolerance) {
            cfg.tolerance = *ov.tolerance;
        }
        if (ov.radial_nodes) {
            cfg.radial_nodes = *ov.radial_nodes;
        }
        if (ov.angular_nodes) {
            cfg.angular_nodes = *ov.angular_nodes;
        }
        if (ov.truncation_radius) {
            cfg.truncation_radius = std::max(*ov.truncation_radius, 8.0 + std::abs(cert.a()));
        }
        try {
            const ExoticVerification v = verify_exotic_fixed_point(cert, probes, cfg);
            report.checks.push_back(Check::at_most(t + "closed_form_fixed_point", v.closed_form_residual, 1e-6));
            if (v.quadrature_checked) {
                report.checks.push_back(Check::at_most(t + "quadrature_fixed_point", v.quadrature_residual, 1e-6));
            }
            report.checks.push_back(Check::at_most(t + "laplacian_eigen_relation", v.laplacian_residual, 1e-6));
            if (v.overflow_warning) {
                report.results["warnings"].push_back(t + "integrand near the double overflow guard");
            }
        } catch (const std::exception& e) {
            report.checks.push_back(Check::failed(t + "fixed_point", 0.0, 1e-6, e.what()));
        }
    }
    report.wall_time_ms = elapsed_ms(start);
    return report;
}

RunReport cmd_multidim(int n, int d, const Overrides& ov)
{
    const auto start = Clock::now();
    if (d != 2) {
        throw UsageError("multidim: only d = 2 is supported");
    }
    if (n < 1 || n > 3) {
        throw UsageError("multidim: --n must lie in [1, 3]");
    }
    const BerezinConfig cfg = ov.apply(BerezinConfig::defaults({n, d}));
    RunReport report;
    report.command = "multidim";
    report.parameters["n"] = n;
    report.parameters["d"] = d;
    record_config(report, cfg);

    const std::vector<ComplexPoint> probes{
        ComplexPoint{cplx(0.0, 0.0), cplx(0.0, 0.0)}, ComplexPoint{cplx(0.5, -0.25), cplx(0.1, 0.7)},
        ComplexPoint{cplx(-0.8, 0.3), cplx(0.4, -0.2)}, ComplexPoint{cplx(0.2, 0.9), cplx(-0.6, -0.5)}};
    const std::vector<std::pair<std::string, PointFunction>> pluriharmonic{
        {"re_z1z2", [](const ComplexPoint& z) { return cplx((z[0] * z[1]).real(), 0.0); }},
        {"im_z1sq_plus_re_z2", [](const ComplexPoint& z) { return cplx((z[0] * z[0]).imag() + z[1].real(), 0.0); }}};
    for (const auto& [name, f] : pluriharmonic) {
        const std::string check = "pluriharmonic." + name;
        guarded(report, check, 0.0, 1e-8, [&] {
            return Check::at_most(check, pluriharmonic_invariance_residual(cfg, f, probes), 1e-8);
        });
    }
    const SmoothnessReport smooth = probe_H_multi_smoothness(n, d);
    report.results["smoothness"] = {{"axis_limit", smooth.axis_limit},
                                    {"diagonal_limit", smooth.diagonal_limit},
                                    {"gap", smooth.gap()},
                                    {"steps", smooth.steps},
                                    {"axis_quotients", smooth.axis_quotients},
                                    {"diagonal_quotients", smooth.diagonal_quotients}};
    if (n == 1) {
        report.checks.push_back(Check::at_most("smoothness.no_gap", smooth.gap(), 1e-6));
    } else {
        report.checks.push_back(Check::above("smoothness.gap", smooth.gap(), 0.01));
    }
    report.wall_time_ms = elapsed_ms(start);
    return report;
}

}  // namespace polyfock::cli
