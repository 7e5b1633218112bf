#include <ostream>

#include <CLI11.hpp>

#include "polyfock/cli.hpp"

namespace polyfock::cli {

namespace {

void add_common(CLI::App* sub, Overrides& ov, std::string& format)
{
    sub->add_option("--tolerance", ov.tolerance, "Order-doubling acceptance tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--radial-nodes", ov.radial_nodes, "Radial Gauss-Laguerre nodes")->check(CLI::Range(16, 4096));
    sub->add_option("--angular-nodes", ov.angular_nodes, "Angular trapezoid nodes")->check(CLI::Range(16, 4096));
    sub->add_option("--truncation-radius", ov.truncation_radius, "Truncation radius of the kernel")
        ->check(CLI::PositiveNumber);
    sub->add_option("--grid-n", ov.grid_n, "Grid samples per axis");
    sub->add_option("--grid-r", ov.grid_r, "Grid half width");
    sub->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "table"}));
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Berezin transform verification for polyanalytic Fock spaces"};
    app.name("polyfock");
    app.require_subcommand(1);

    Overrides ov;
    std::string format = "json";

    int n_max = 4;
    auto* identities = app.add_subcommand("identities", "Kernel, symbol and Laguerre/Bessel identity suite");
    identities->add_option("--n-max", n_max, "Largest polyanalytic order")->capture_default_str();
    add_common(identities, ov, format);

    int qn_n = 2;
    auto* qn = app.add_subcommand("qn", "Exact coefficients of Q_n");
    qn->add_option("--n", qn_n, "Polyanalytic order")->required();
    add_common(qn, ov, format);

    BerezinRequest breq;
    std::string method = "grid_convolution";
    auto* berezin = app.add_subcommand("berezin", "Apply B_n to a catalog function or a BGF1 grid");
    berezin->add_option("--n", breq.n, "Polyanalytic order")->capture_default_str();
    berezin->add_option("--method", method, "quadrature | grid_convolution | multiplier")->capture_default_str();
    berezin->add_option("--function", breq.function, "one | re_w | re_w3 | abs2 | gauss | bump");
    berezin->add_option("--input", breq.input_path, "BGF1 input grid");
    berezin->add_option("--output", breq.output_path, "BGF1 output path");
    berezin->add_option("--csv", breq.csv_path, "CSV path for the central row");
    berezin->add_flag("--crosscheck", breq.crosscheck, "Compare all available methods at 25 interior probes");
    add_common(berezin, ov, format);

    int ex_n = 1;
    double radius = 30.0;
    int max_roots = 16;
    auto* exotic = app.add_subcommand("exotic", "Roots of e^{-z/4} = P(z) and the fixed points e^{a Re z}");
    exotic->add_option("--n", ex_n, "Polyanalytic order")->capture_default_str();
    exotic->add_option("--radius", radius, "Search disk radius")->capture_default_str();
    exotic->add_option("--max-roots", max_roots, "Keep at most this many roots")->capture_default_str();
    add_common(exotic, ov, format);

    int md_n = 2;
    int md_d = 2;
    auto* multidim = app.add_subcommand("multidim", "Pluriharmonic invariance and the smoothness probe on C^d");
    multidim->add_option("--n", md_n, "Polyanalytic order")->capture_default_str();
    multidim->add_option("--d", md_d, "Complex dimension")->capture_default_str();
    add_common(multidim, ov, format);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        RunReport report;
        if (app.got_subcommand(identities)) {
            report = cmd_identities(n_max, ov);
        } else if (app.got_subcommand(qn)) {
            report = cmd_qn(qn_n, ov);
        } else if (app.got_subcommand(berezin)) {
            try {
                breq.method = parse_method(method);
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            report = cmd_berezin(breq, ov);
        } else if (app.got_subcommand(exotic)) {
            report = cmd_exotic(ex_n, radius, max_roots, ov);
        } else {
            report = cmd_multidim(md_n, md_d, ov);
        }
        if (format == "table") {
            out << report.render_table();
        } else {
            out << report.to_json().dump(2) << '\n';
        }
        return report.exit_code();
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace polyfock::cli
