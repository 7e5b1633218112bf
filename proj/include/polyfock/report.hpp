#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace polyfock {

/// abs_diff: pass iff |expected - actual| <= tolerance (residual bounds use
/// expected = 0). lower_bound: pass iff actual > expected.
enum class CheckKind { abs_diff, lower_bound };

struct Check {
    std::string name;
    double expected = 0.0;
    std::optional<double> actual;  // empty when the computation failed
    double tolerance = 0.0;
    CheckKind kind = CheckKind::abs_diff;
    bool pass = false;
    std::string error;

    static Check abs_diff(std::string name, double expected, double actual, double tolerance);
    /// 0 <= actual <= bound, written as |0 - actual| <= bound.
    static Check at_most(std::string name, double actual, double bound);
    static Check above(std::string name, double actual, double bound);
    static Check failed(std::string name, double expected, double tolerance, std::string error);
};

struct RunReport {
    std::string command;
    std::map<std::string, nlohmann::json> parameters;
    std::vector<Check> checks;
    /// Command-specific payload (coefficients, certificates, file paths).
    nlohmann::json results = nlohmann::json::object();
    std::int64_t wall_time_ms = 0;
    /// Set when the command found nothing to report (not a failure).
    bool empty_result = false;

    bool all_pass() const;
    /// 0 all pass, 1 check failure, 3 advisory empty result.
    int exit_code() const;

    nlohmann::json to_json() const;
    std::string render_table() const;
};

}  // namespace polyfock
