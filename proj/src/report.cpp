#include "polyfock/report.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace polyfock {

namespace {

bool finite(double v)
{
    return std::isfinite(v);
}

nlohmann::json number_or_null(double v)
{
    return finite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

}  // namespace

Check Check::abs_diff(std::string name, double expected, double actual, double tolerance)
{
    Check c{std::move(name), expected, actual, tolerance, CheckKind::abs_diff, false, {}};
    c.pass = finite(expected) && finite(actual) && std::abs(expected - actual) <= tolerance;
    return c;
}

Check Check::at_most(std::string name, double actual, double bound)
{
    Check c = abs_diff(std::move(name), 0.0, actual, bound);
    c.pass = c.pass && actual >= 0.0;
    return c;
}

Check Check::above(std::string name, double actual, double bound)
{
    Check c{std::move(name), bound, actual, 0.0, CheckKind::lower_bound, false, {}};
    c.pass = finite(actual) && actual > bound;
    return c;
}

Check Check::failed(std::string name, double expected, double tolerance, std::string error)
{
    return Check{std::move(name), expected, std::nullopt, tolerance, CheckKind::abs_diff, false, std::move(error)};
}

bool RunReport::all_pass() const
{
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

int RunReport::exit_code() const
{
    if (!all_pass()) {
        return 1;
    }
    return empty_result ? 3 : 0;
}

nlohmann::json RunReport::to_json() const
{
    nlohmann::json j;
    j["command"] = command;
    j["parameters"] = nlohmann::json::object();
    for (const auto& [key, value] : parameters) {
        j["parameters"][key] = value;
    }
    j["checks"] = nlohmann::json::array();
    for (const Check& c : checks) {
        nlohmann::json cj{{"name", c.name},
                          {"expected", number_or_null(c.expected)},
                          {"actual", c.actual ? number_or_null(*c.actual) : nlohmann::json(nullptr)},
                          {"tolerance", number_or_null(c.tolerance)},
                          {"kind", c.kind == CheckKind::abs_diff ? "abs_diff" : "lower_bound"},
                          {"pass", c.pass}};
        if (!c.error.empty()) {
            cj["error"] = c.error;
        }
        j["checks"].push_back(std::move(cj));
    }
    j["results"] = results;
    j["all_pass"] = all_pass();
    j["wall_time_ms"] = wall_time_ms;
    return j;
}

std::string RunReport::render_table() const
{
    std::ostringstream out;
    out << command;
    for (const auto& [key, value] : parameters) {
        out << ' ' << key << '=' << (value.is_string() ? value.get<std::string>() : value.dump());
    }
    out << '\n';
    std::size_t width = 5;
    for (const Check& c : checks) {
        width = std::max(width, c.name.size());
    }
    out << std::left << std::setw(static_cast<int>(width)) << "check" << "  " << std::setw(6) << "status"
        << std::right << std::setw(14) << "actual" << std::setw(14) << "expected" << std::setw(12) << "tolerance"
        << '\n';
    out << std::scientific << std::setprecision(5);
    for (const Check& c : checks) {
        out << std::left << std::setw(static_cast<int>(width)) << c.name << "  " << std::setw(6)
            << (c.pass ? "PASS" : "FAIL") << std::right << std::setw(14);
        if (c.actual) {
            out << *c.actual;
        } else {
            out << "null";
        }
        out << std::setw(14) << c.expected;
        if (c.kind == CheckKind::abs_diff) {
            out << std::setw(12) << c.tolerance;
        } else {
            out << std::setw(12) << "(> exp)";
        }
        if (!c.error.empty()) {
            out << "  " << c.error;
        }
        out << '\n';
    }
    if (!results.empty()) {
        out << "results " << results.dump() << '\n';
    }
    out << (all_pass() ? "all checks passed" : "some checks FAILED") << " in " << wall_time_ms << " ms\n";
    return out.str();
}

}  // namespace polyfock
