#include "polyfock/finite_difference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

namespace polyfock {

namespace {

struct Ladder {
    cplx value;
    double sample_max = 0.0;
};

Ladder composed_laplacian(const std::function<cplx(cplx)>& f, cplx z, int k, double h)
{
    int radius = 2 * k;
    int width = 2 * radius + 1;
    std::vector<cplx> patch(static_cast<std::size_t>(width) * width);
    double sample_max = 0.0;
    for (int j = 0; j < width; ++j) {
        for (int i = 0; i < width; ++i) {
            const cplx v = f(z + cplx((i - radius) * h, (j - radius) * h));
            patch[static_cast<std::size_t>(j) * width + i] = v;
            sample_max = std::max(sample_max, std::abs(v));
        }
    }
    const double scale = 1.0 / (12.0 * h * h);
    for (int pass = 0; pass < k; ++pass) {
        const int inner = width - 4;
        std::vector<cplx> next(static_cast<std::size_t>(inner) * inner);
        auto at = [&](int i, int j) { return patch[static_cast<std::size_t>(j) * width + i]; };
        for (int j = 0; j < inner; ++j) {
            for (int i = 0; i < inner; ++i) {
                const int ci = i + 2;
                const int cj = j + 2;
                const cplx dxx = -at(ci - 2, cj) + 16.0 * at(ci - 1, cj) - 30.0 * at(ci, cj) +
                                 16.0 * at(ci + 1, cj) - at(ci + 2, cj);
                const cplx dyy = -at(ci, cj - 2) + 16.0 * at(ci, cj - 1) - 30.0 * at(ci, cj) +
                                 16.0 * at(ci, cj + 1) - at(ci, cj + 2);
                next[static_cast<std::size_t>(j) * inner + i] = (dxx + dyy) * scale;
            }
        }
        patch = std::move(next);
        width = inner;
    }
    return {patch[0], sample_max};
}

}  // namespace

LaplacianEstimate fd_laplacian_power(const std::function<cplx(cplx)>& f, cplx z, int k, double h)
{
    if (k < 0 || !(h > 0.0)) {
        throw std::invalid_argument("fd_laplacian_power: need k >= 0 and h > 0");
    }
    if (k == 0) {
        return {f(z), 16.0, false};
    }
    const Ladder d0 = composed_laplacian(f, z, k, h);
    const Ladder d1 = composed_laplacian(f, z, k, h / 2);
    const Ladder d2 = composed_laplacian(f, z, k, h / 4);

    const cplx r0 = (16.0 * d1.value - d0.value) / 15.0;
    const cplx r1 = (16.0 * d2.value - d1.value) / 15.0;
    LaplacianEstimate out;
    out.value = (64.0 * r1 - r0) / 63.0;

    // Round-off in the finest composed stencil: (sum |coefficients| / h^2)^k.
    const double finest = h / 4;
    const double floor = 100.0 * std::numeric_limits<double>::epsilon() * d2.sample_max *
                         std::pow(2.0 * 64.0 / (12.0 * finest * finest), k);
    const cplx coarse_diff = d0.value - d1.value;
    const cplx fine_diff = d1.value - d2.value;
    if (std::abs(coarse_diff) > 10.0 * floor && std::abs(fine_diff) > 10.0 * floor) {
        out.ratio = std::abs(coarse_diff) / std::abs(fine_diff);
        out.ratio_checked = true;
        if (std::abs(out.ratio / 16.0 - 1.0) > 0.2) {
            std::ostringstream msg;
            msg << "fd_laplacian_power: Richardson ratio " << out.ratio << " at h=" << h
                << " is more than 20% away from 16 (k=" << k << ")";
            throw StepTooCoarse(msg.str());
        }
    }
    return out;
}

}  // namespace polyfock
