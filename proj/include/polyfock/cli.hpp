#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "polyfock/berezin.hpp"
#include "polyfock/report.hpp"

namespace polyfock::cli {

/// Bad flags or precondition violations; mapped to exit code 2.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Flags every subcommand accepts. Unset fields keep the BerezinConfig or
/// command default.
struct Overrides {
    std::optional<double> tolerance;
    std::optional<int> radial_nodes;
    std::optional<int> angular_nodes;
    std::optional<double> truncation_radius;
    std::optional<int> grid_n;
    std::optional<double> grid_r;

    /// Overlays the set fields; throws UsageError if the result is invalid.
    BerezinConfig apply(BerezinConfig cfg) const;
};

/// Named test functions for `berezin`: one, re_w, re_w3, abs2, gauss, bump.
std::optional<std::function<cplx(cplx)>> catalog_function(const std::string& name);

RunReport cmd_identities(int n_max, const Overrides& ov = {});
RunReport cmd_qn(int n, const Overrides& ov = {});

struct BerezinRequest {
    int n = 1;
    BerezinMethod method = BerezinMethod::grid_convolution;
    std::string function;    // catalog name, or
    std::string input_path;  // BGF1 grid (grid methods only)
    std::string output_path; // BGF1 result; empty to skip
    std::string csv_path;    // central-row CSV; defaults next to output_path
    bool crosscheck = false;
};
RunReport cmd_berezin(const BerezinRequest& req, const Overrides& ov = {});

RunReport cmd_exotic(int n, double search_radius, int max_roots = 16, const Overrides& ov = {});
RunReport cmd_multidim(int n, int d, const Overrides& ov = {});

/// Full command line: parses, runs, prints the report (json or table) to
/// `out`, diagnostics to `err`, and returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace polyfock::cli
