#include "polyfock/exotic.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "polyfock/finite_difference.hpp"

namespace polyfock {

namespace {

using lcplx = std::complex<long double>;

void require_range(int value, int lo, int hi, const char* what)
{
    if (value < lo || value > hi) {
        std::ostringstream msg;
        msg << what << ": argument " << value << " outside [" << lo << ", " << hi << "]";
        throw std::invalid_argument(msg.str());
    }
}

// Nearest long double to a rational: double head plus double tail.
long double to_long_double(const Rational& q)
{
    const double head = q.get_d();
    const Rational rest = q - Rational(head);
    return static_cast<long double>(head) + static_cast<long double>(rest.get_d());
}

// e^{-z/4} - P(z) and its derivative in extended precision.
class ExoticFunction {
public:
    explicit ExoticFunction(const RationalPoly& p)
    {
        for (const Rational& c : p.coeffs()) {
            coeffs_.push_back(to_long_double(c));
        }
    }

    lcplx value(lcplx z) const { return std::exp(-z / 4.0L) - horner(z); }

    void value_and_derivative(lcplx z, lcplx& g, lcplx& dg) const
    {
        lcplx p = 0.0L;
        lcplx dp = 0.0L;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
            dp = dp * z + p;
            p = p * z + *it;
        }
        const lcplx e = std::exp(-z / 4.0L);
        g = e - p;
        dg = -e / 4.0L - dp;
    }

private:
    lcplx horner(lcplx z) const
    {
        lcplx acc = 0.0L;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
            acc = acc * z + *it;
        }
        return acc;
    }

    std::vector<long double> coeffs_;
};

}  // namespace

ExponentialSymbol::ExponentialSymbol(cplx a_) : a(a_)
{
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
        throw std::invalid_argument("ExponentialSymbol: a must be finite");
    }
}

PointFunction ExponentialSymbol::as_point_function() const
{
    return [a = a](const ComplexPoint& p) { return std::exp(a * p[0].real()); };
}

RationalPoly moment_polynomial(int k)
{
    require_range(k, 0, 40, "moment_polynomial");
    const RationalPoly half_a = RationalPoly::monomial(Rational(1, 2), 1);
    RationalPoly prev = RationalPoly::constant(1);
    if (k == 0) {
        return prev;
    }
    RationalPoly cur = half_a;
    for (int j = 2; j <= k; ++j) {
        RationalPoly next = half_a * cur + prev * Rational(j - 1, 2);
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

cplx gaussian_moment_I(int k, cplx a)
{
    require_range(k, 0, 40, "gaussian_moment_I");
    const cplx e = std::exp(a * a / 4.0);
    cplx prev = e;
    if (k == 0) {
        return prev;
    }
    cplx cur = a / 2.0 * e;
    for (int j = 2; j <= k; ++j) {
        const cplx next = a / 2.0 * cur + (j - 1) / 2.0 * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

cplx s_coefficient(int m, cplx a)
{
    require_range(m, 0, 20, "s_coefficient");
    cplx acc = 0.0;
    for (int j = 0; j <= m; ++j) {
        acc += binomial(m, j).get_d() * gaussian_moment_I(2 * (m - j), 0.0) * gaussian_moment_I(2 * j, a);
    }
    return acc;
}

namespace {

// C(n, k+1) C(n, l+1) (-1)^{k+l} / (k! l!).
Rational pair_weight(int n, int k, int l)
{
    Rational w(binomial(n, k + 1) * binomial(n, l + 1), factorial(k) * factorial(l));
    w.canonicalize();
    return (k + l) % 2 == 0 ? w : Rational(-w);
}

}  // namespace

cplx berezin_exponential_closed_form(int n, cplx a, const ComplexPoint& z)
{
    require_range(n, 1, 10, "berezin_exponential_closed_form");
    std::vector<cplx> s(static_cast<std::size_t>(2 * n - 1));
    for (int m = 0; m < 2 * n - 1; ++m) {
        s[m] = s_coefficient(m, a);
    }
    cplx acc = 0.0;
    for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
            acc += pair_weight(n, k, l).get_d() * s[k + l];
        }
    }
    return std::exp(a * z[0].real()) * acc / static_cast<double>(n);
}

RationalPoly multiplier_polynomial_P(int n)
{
    require_range(n, 1, 10, "multiplier_polynomial_P");
    // Same double sum with e^{a^2/4} factored out of every I_{2j}(a).
    std::vector<RationalPoly> even(static_cast<std::size_t>(2 * n - 1));
    std::vector<Rational> even_at_zero(even.size());
    for (std::size_t j = 0; j < even.size(); ++j) {
        even[j] = moment_polynomial(static_cast<int>(2 * j));
        even_at_zero[j] = even[j].coeff(0);
    }
    RationalPoly in_a;
    for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
            const int m = k + l;
            RationalPoly s;
            for (int j = 0; j <= m; ++j) {
                s += even[j] * Rational(binomial(m, j) * even_at_zero[m - j]);
            }
            in_a += s * pair_weight(n, k, l);
        }
    }
    in_a *= Rational(1, n);

    std::vector<Rational> in_x;
    for (std::size_t i = 0; i < in_a.coeffs().size(); ++i) {
        if (i % 2 == 1) {
            if (in_a.coeffs()[i] != 0) {
                throw std::logic_error("multiplier_polynomial_P: odd power of a survived");
            }
            continue;
        }
        in_x.push_back(in_a.coeffs()[i]);
    }
    RationalPoly p(std::move(in_x));
    if (p.coeff(0) != 1) {
        throw std::logic_error("multiplier_polynomial_P: P(0) != 1");
    }
    return p;
}

double exotic_residual(const RationalPoly& p, cplx z)
{
    const ExoticFunction g(p);
    return static_cast<double>(std::abs(g.value(lcplx(z.real(), z.imag()))));
}

void RootCertificate::validate() const
{
    if (!std::isfinite(root.real()) || !std::isfinite(root.imag())) {
        throw std::invalid_argument("RootCertificate: root is not finite");
    }
    if (root == cplx(0.0, 0.0)) {
        throw std::invalid_argument("RootCertificate: root must be nonzero");
    }
    const double r = exotic_residual(multiplier_polynomial_P(n), root);
    if (!(r <= kMaxResidual)) {
        std::ostringstream msg;
        msg << "RootCertificate: residual " << r << " at " << root.real() << (root.imag() < 0 ? "" : "+")
            << root.imag() << "i exceeds " << kMaxResidual;
        throw std::invalid_argument(msg.str());
    }
}

void to_json(nlohmann::json& j, const RootCertificate& cert)
{
    const cplx a = cert.a();
    j = nlohmann::json{{"n", cert.n},
                       {"root_re", cert.root.real()},
                       {"root_im", cert.root.imag()},
                       {"residual", cert.residual},
                       {"a_re", a.real()},
                       {"a_im", a.imag()}};
}

void from_json(const nlohmann::json& j, RootCertificate& cert)
{
    cert.n = j.at("n").get<int>();
    cert.root = cplx(j.at("root_re").get<double>(), j.at("root_im").get<double>());
    cert.seed = cert.root;
    cert.newton_steps = 0;
    cert.validate();
    cert.residual = exotic_residual(multiplier_polynomial_P(cert.n), cert.root);
}

namespace {

double wrapped_phase_step(lcplx from, lcplx to)
{
    return static_cast<double>(std::arg(to / from));
}

// Phase change of g along the segment [a, b], bisecting where it jumps.
double phase_along(const ExoticFunction& g, lcplx a, lcplx ga, lcplx b, lcplx gb, int depth)
{
    const double step = wrapped_phase_step(ga, gb);
    if (std::abs(step) <= kPi / 4 || depth >= 16) {
        return step;
    }
    const lcplx mid = (a + b) / 2.0L;
    const lcplx gm = g.value(mid);
    return phase_along(g, a, ga, mid, gm, depth + 1) + phase_along(g, mid, gm, b, gb, depth + 1);
}

int winding(const ExoticFunction& g, double x0, double y0, double side)
{
    constexpr int kSamples = 256;
    constexpr int kPerSide = kSamples / 4;
    const lcplx corners[5] = {{x0, y0}, {x0 + side, y0}, {x0 + side, y0 + side}, {x0, y0 + side}, {x0, y0}};
    std::vector<lcplx> pts;
    pts.reserve(kSamples + 1);
    for (int s = 0; s < 4; ++s) {
        for (int i = 0; i < kPerSide; ++i) {
            pts.push_back(corners[s] + (corners[s + 1] - corners[s]) * (static_cast<long double>(i) / kPerSide));
        }
    }
    pts.push_back(pts.front());
    std::vector<lcplx> vals(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        vals[i] = g.value(pts[i]);
        if (vals[i] == lcplx(0.0L, 0.0L)) {
            return -1;  // zero on the contour
        }
    }
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        total += phase_along(g, pts[i], vals[i], pts[i + 1], vals[i + 1], 0);
    }
    return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

struct NewtonResult {
    lcplx root;
    int steps = 0;
    bool converged = false;
};

NewtonResult damped_newton(const ExoticFunction& g, lcplx seed)
{
    constexpr int kMaxIterations = 50;
    NewtonResult r{seed, 0, false};
    lcplx gz;
    lcplx dg;
    g.value_and_derivative(r.root, gz, dg);
    for (int it = 0; it < kMaxIterations; ++it) {
        if (dg == lcplx(0.0L, 0.0L) || !std::isfinite(std::abs(gz))) {
            return r;
        }
        const lcplx step = gz / dg;
        long double damping = 1.0L;
        lcplx trial = r.root - step;
        lcplx gt;
        lcplx dt;
        g.value_and_derivative(trial, gt, dt);
        for (int halving = 0; halving < 12 && !(std::abs(gt) < std::abs(gz)); ++halving) {
            damping /= 2.0L;
            trial = r.root - damping * step;
            g.value_and_derivative(trial, gt, dt);
        }
        r.root = trial;
        r.steps = it + 1;
        gz = gt;
        dg = dt;
        if (std::abs(damping * step) <= 1e-17L * std::max(1.0L, std::abs(r.root))) {
            break;
        }
    }
    r.converged = std::isfinite(std::abs(gz)) &&
                  static_cast<double>(std::abs(gz)) <= RootCertificate::kMaxResidual;
    return r;
}

struct Square {
    double x0;
    double y0;
    double side;
    bool contains(lcplx z, double slack) const
    {
        const double pad = slack * side;
        const auto x = static_cast<double>(z.real());
        const auto y = static_cast<double>(z.imag());
        return x >= x0 - pad && x <= x0 + side + pad && y >= y0 - pad && y <= y0 + side + pad;
    }
};

// Newton seeds for a square holding one zero: centre first, then quarter centres.
void refine_square(const ExoticFunction& g, const Square& sq, int n, std::vector<RootCertificate>& out)
{
    const double h = sq.side;
    const lcplx seeds[5] = {{sq.x0 + h / 2, sq.y0 + h / 2},
                            {sq.x0 + h / 4, sq.y0 + h / 4},
                            {sq.x0 + 3 * h / 4, sq.y0 + h / 4},
                            {sq.x0 + h / 4, sq.y0 + 3 * h / 4},
                            {sq.x0 + 3 * h / 4, sq.y0 + 3 * h / 4}};
    std::optional<std::pair<NewtonResult, lcplx>> fallback;
    for (const lcplx& seed : seeds) {
        const NewtonResult r = damped_newton(g, seed);
        if (!r.converged) {
            continue;
        }
        if (sq.contains(r.root, 0.01)) {
            fallback = {r, seed};
            break;
        }
        if (!fallback) {
            fallback = {r, seed};
        }
    }
    if (!fallback) {
        return;
    }
    const auto& [r, seed] = *fallback;
    RootCertificate cert;
    cert.n = n;
    cert.root = cplx(static_cast<double>(r.root.real()), static_cast<double>(r.root.imag()));
    cert.seed = cplx(static_cast<double>(seed.real()), static_cast<double>(seed.imag()));
    cert.newton_steps = r.steps;
    cert.residual = static_cast<double>(std::abs(g.value(lcplx(cert.root.real(), cert.root.imag()))));
    if (cert.residual <= RootCertificate::kMaxResidual) {
        out.push_back(cert);
    }
}

void scan_square(const ExoticFunction& g, const Square& sq, int n, int depth, std::vector<RootCertificate>& out)
{
    constexpr int kMaxDepth = 6;
    const int w = winding(g, sq.x0, sq.y0, sq.side);
    if (w == 0) {
        return;
    }
    if (w == 1 || depth >= kMaxDepth) {
        refine_square(g, sq, n, out);
        return;
    }
    // Several zeros (or an unreliable contour): split in four.
    const double half = sq.side / 2;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            scan_square(g, {sq.x0 + i * half, sq.y0 + j * half, half}, n, depth + 1, out);
        }
    }
}

}  // namespace

int exotic_winding_number(const RationalPoly& p, double x0, double y0, double side)
{
    return winding(ExoticFunction(p), x0, y0, side);
}

std::vector<RootCertificate> find_exotic_roots(int n, double search_radius, int max_roots, Execution exec)
{
    require_range(n, 1, 6, "find_exotic_roots");
    if (!(search_radius > 0.0) || !std::isfinite(search_radius)) {
        throw std::invalid_argument("find_exotic_roots: search radius must be positive");
    }
    if (max_roots < 1) {
        throw std::invalid_argument("find_exotic_roots: max_roots must be at least 1");
    }
    const ExoticFunction g(multiplier_polynomial_P(n));

    // Unit squares on a grid shifted off the lattice lines where symmetric roots sit.
    constexpr double kOffset = 0.3819660112501051;
    const int cells = static_cast<int>(std::ceil(search_radius + kOffset)) + 1;
    std::vector<Square> squares;
    for (int i = -cells; i < cells; ++i) {
        for (int j = -cells; j < cells; ++j) {
            const Square sq{i + kOffset, j + kOffset, 1.0};
            const double nx = std::clamp(0.0, sq.x0, sq.x0 + 1.0);
            const double ny = std::clamp(0.0, sq.y0, sq.y0 + 1.0);
            if (std::hypot(nx, ny) <= search_radius) {
                squares.push_back(sq);
            }
        }
    }

    std::vector<std::vector<RootCertificate>> found(squares.size());
    if (exec == Execution::serial) {
        for (std::size_t s = 0; s < squares.size(); ++s) {
            scan_square(g, squares[s], n, 0, found[s]);
        }
    } else {
        std::exception_ptr failure;
        const auto count = static_cast<long>(squares.size());
#pragma omp parallel for schedule(dynamic, 8)
        for (long s = 0; s < count; ++s) {
            try {
                scan_square(g, squares[s], n, 0, found[s]);
            } catch (...) {
#pragma omp critical(polyfock_scan_failure)
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        }
        if (failure) {
            std::rethrow_exception(failure);
        }
    }

    std::vector<RootCertificate> roots;
    for (const auto& bucket : found) {
        for (const RootCertificate& cert : bucket) {
            if (std::abs(cert.root) < 1e-6 || std::abs(cert.root) > search_radius) {
                continue;
            }
            roots.push_back(cert);
        }
    }
    auto before = [](const RootCertificate& x, const RootCertificate& y) {
        if (x.root.imag() != y.root.imag()) {
            return x.root.imag() < y.root.imag();
        }
        return x.root.real() < y.root.real();
    };
    std::sort(roots.begin(), roots.end(), before);
    std::vector<RootCertificate> distinct;
    for (const RootCertificate& cert : roots) {
        const bool seen = std::any_of(distinct.begin(), distinct.end(), [&](const RootCertificate& other) {
            return std::abs(other.root - cert.root) <= 1e-6;
        });
        if (!seen) {
            distinct.push_back(cert);
        }
    }
    if (distinct.empty()) {
        std::ostringstream msg;
        msg << "no nonzero root of e^{-z/4} - P(z) in |z| <= " << search_radius << " for n = " << n
            << "; enlarge the radius";
        throw NoRootFound(msg.str());
    }
    if (distinct.size() > static_cast<std::size_t>(max_roots)) {
        distinct.resize(static_cast<std::size_t>(max_roots));
    }
    return distinct;
}

BerezinConfig exotic_quadrature_config(int n, cplx a)
{
    BerezinConfig cfg = BerezinConfig::defaults({n, 1});
    cfg.truncation_radius = std::max(cfg.truncation_radius, 8.0 + std::abs(a));
    cfg.radial_nodes = 128;
    cfg.angular_nodes = 128;
    return cfg;
}

std::vector<ComplexPoint> standard_exotic_probes()
{
    return {ComplexPoint{cplx(0.0, 0.0)}, ComplexPoint{cplx(0.5, 0.0)}, ComplexPoint{cplx(0.0, 0.5)},
            ComplexPoint{cplx(0.5, 0.5)}};
}

double exponential_laplacian_residual(cplx a, std::span<const cplx> points)
{
    const ExponentialSymbol f(a);
    const double h = 0.05 / std::max(1.0, std::abs(a));
    const cplx a2 = a * a;
    double worst = 0.0;
    for (const cplx& z : points) {
        const LaplacianEstimate est = fd_laplacian_power(f, z, 1, h);
        const cplx expected = a2 * f(z);
        const double scale = std::abs(a2) > 0.0 ? std::abs(expected) : std::max(1.0, std::abs(f(z)));
        worst = std::max(worst, std::abs(est.value - expected) / scale);
    }
    return worst;
}

ExoticVerification verify_exotic_fixed_point(int n, const ExponentialSymbol& f, std::span<const ComplexPoint> probes,
                                             const BerezinConfig& cfg)
{
    const double need = 8.0 + std::abs(f.a);
    if (cfg.truncation_radius < need) {
        std::ostringstream msg;
        msg << "verify_exotic_fixed_point: truncation radius " << cfg.truncation_radius << " below 8 + |a| = " << need;
        throw std::invalid_argument(msg.str());
    }
    if (cfg.order.n != n || cfg.order.d != 1) {
        throw std::invalid_argument("verify_exotic_fixed_point: configuration order must be (n, 1)");
    }
    ExoticVerification v;
    v.a = f.a;
    double reach = 0.0;
    std::vector<cplx> plane;
    for (const ComplexPoint& p : probes) {
        if (p.dimension() != 1 || std::abs(p[0]) > 1.0 + 1e-12) {
            throw std::invalid_argument("verify_exotic_fixed_point: probes must lie in the unit disk of C");
        }
        reach = std::max(reach, std::abs(p[0]));
        plane.push_back(p[0]);
        const cplx value = f(p[0]);
        const cplx closed = berezin_exponential_closed_form(n, f.a, p);
        v.closed_form_residual = std::max(v.closed_form_residual, std::abs(closed - value) / std::abs(value));
    }
    v.overflow_warning = std::abs(f.a.real()) * (reach + cfg.truncation_radius) > 700.0;
    if (std::abs(f.a) <= ExoticVerification::kQuadratureLimit) {
        const auto transformed = berezin_quadrature_batch(cfg, f.as_point_function(), probes);
        for (std::size_t i = 0; i < probes.size(); ++i) {
            const cplx value = f(probes[i][0]);
            v.quadrature_residual = std::max(v.quadrature_residual, std::abs(transformed[i] - value) / std::abs(value));
        }
        v.quadrature_checked = true;
    }
    v.laplacian_residual = exponential_laplacian_residual(f.a, plane);
    return v;
}

ExoticVerification verify_exotic_fixed_point(const RootCertificate& cert, std::span<const ComplexPoint> probes,
                                             const BerezinConfig& cfg)
{
    return verify_exotic_fixed_point(cert.n, ExponentialSymbol(cert.a()), probes, cfg);
}

}  // namespace polyfock
