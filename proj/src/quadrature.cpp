#include "polyfock/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Eigenvalues>

#include "polyfock/common.hpp"

namespace polyfock {

void QuadratureRule::validate() const
{
    if (dimension == 0 || nodes.size() != weights.size() * dimension) {
        throw std::logic_error("quadrature rule: node/weight lengths differ");
    }
    for (double w : weights) {
        if (!(w > 0.0)) {
            throw std::logic_error("quadrature rule: non-positive weight");
        }
    }
}

namespace {

// Orthonormal Laguerre recurrence for the probability weight
// t^alpha e^{-t} / Gamma(alpha+1):
//   t p_k = b_{k+1} p_{k+1} + a_k p_k + b_k p_{k-1},
//   a_k = 2k + alpha + 1, b_k = sqrt(k (k + alpha)).
struct OrthonormalState {
    long double p = 0.0L;       // p_n, scaled
    long double dp = 0.0L;      // p_n', same scale
    long double log_scale = 0.0L;
    long double sum_sq = 0.0L;  // sum_{k<n} p_k^2 in units of exp(2 log_scale)
};

OrthonormalState orthonormal_laguerre(int n, long double alpha, long double t)
{
    constexpr long double kBig = 1e100L;
    long double p_prev = 0.0L;
    long double p = 1.0L;
    long double dp_prev = 0.0L;
    long double dp = 0.0L;
    long double log_scale = 0.0L;
    long double sum_sq = 0.0L;
    for (int k = 0; k < n; ++k) {
        sum_sq += p * p;
        const long double a_k = 2.0L * k + alpha + 1.0L;
        const long double b_k = std::sqrt(k * (k + alpha));
        const long double b_next = std::sqrt((k + 1.0L) * (k + 1.0L + alpha));
        const long double p_next = ((t - a_k) * p - b_k * p_prev) / b_next;
        const long double dp_next = (p + (t - a_k) * dp - b_k * dp_prev) / b_next;
        p_prev = p;
        p = p_next;
        dp_prev = dp;
        dp = dp_next;
        if (std::max(std::abs(p), std::abs(p_prev)) > kBig) {
            p /= kBig;
            p_prev /= kBig;
            dp /= kBig;
            dp_prev /= kBig;
            sum_sq /= kBig * kBig;
            log_scale += std::log(kBig);
        }
    }
    return {p, dp, log_scale, sum_sq};
}

QuadratureRule build_gauss_laguerre(int n, double alpha)
{
    Eigen::VectorXd diag(n);
    Eigen::VectorXd sub(std::max(n - 1, 1));
    for (int k = 0; k < n; ++k) {
        diag(k) = 2.0 * k + alpha + 1.0;
        if (k + 1 < n) {
            sub(k) = std::sqrt((k + 1.0) * (k + 1.0 + alpha));
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub.head(n - 1), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("gauss_laguerre: tridiagonal eigensolver failed");
    }

    QuadratureRule rule;
    rule.kind = QuadratureKind::gauss_laguerre_radial;
    rule.alpha = alpha;
    rule.order = n;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const long double log_gamma = std::lgamma(static_cast<long double>(alpha) + 1.0L);
    for (int i = 0; i < n; ++i) {
        long double t = solver.eigenvalues()(i);
        for (int iter = 0; iter < 8; ++iter) {
            const auto s = orthonormal_laguerre(n, alpha, t);
            const long double step = s.p / s.dp;
            t -= step;
            if (std::abs(step) <= 1e-19L * std::abs(t)) {
                break;
            }
        }
        const auto s = orthonormal_laguerre(n, alpha, t);
        rule.nodes[i] = static_cast<double>(t);
        rule.weights[i] = static_cast<double>(std::exp(log_gamma - std::log(s.sum_sq) - 2.0L * s.log_scale));
    }
    // Far nodes of large rules carry weights below the double range.
    std::size_t kept = 0;
    for (int i = 0; i < n; ++i) {
        if (rule.weights[i] > 0.0) {
            rule.nodes[kept] = rule.nodes[i];
            rule.weights[kept] = rule.weights[i];
            ++kept;
        }
    }
    rule.nodes.resize(kept);
    rule.weights.resize(kept);
    return rule;
}

}  // namespace

const QuadratureRule& gauss_laguerre(int n, double alpha)
{
    if (n < 1) {
        throw std::invalid_argument("gauss_laguerre: need at least one node");
    }
    if (!(alpha > -1.0)) {
        throw std::invalid_argument("gauss_laguerre: alpha must exceed -1");
    }
    static std::mutex mutex;
    static std::map<std::pair<int, double>, std::unique_ptr<const QuadratureRule>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[{n, alpha}];
    if (!slot) {
        slot = std::make_unique<const QuadratureRule>(build_gauss_laguerre(n, alpha));
    }
    return *slot;
}

QuadratureRule trapezoid_angular(int m)
{
    if (m < 1) {
        throw std::invalid_argument("trapezoid_angular: need at least one node");
    }
    QuadratureRule rule;
    rule.kind = QuadratureKind::trapezoid_angular;
    rule.order = m;
    rule.nodes.resize(m);
    rule.weights.assign(m, 1.0 / m);
    for (int j = 0; j < m; ++j) {
        rule.nodes[j] = 2.0 * kPi * j / m;
    }
    return rule;
}

QuadratureRule tensor(const QuadratureRule& a, const QuadratureRule& b)
{
    QuadratureRule rule;
    rule.kind = QuadratureKind::tensor;
    rule.dimension = a.dimension + b.dimension;
    rule.alpha = a.alpha;
    rule.weights.reserve(a.size() * b.size());
    rule.nodes.reserve(a.size() * b.size() * rule.dimension);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            for (double x : a.node(i)) {
                rule.nodes.push_back(x);
            }
            for (double x : b.node(j)) {
                rule.nodes.push_back(x);
            }
            rule.weights.push_back(a.weights[i] * b.weights[j]);
        }
    }
    return rule;
}

}  // namespace polyfock
