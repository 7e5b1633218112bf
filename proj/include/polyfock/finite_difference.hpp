#pragma once

#include <functional>

#include "polyfock/common.hpp"

namespace polyfock {

/// Result of a Richardson-extrapolated finite-difference ladder.
struct LaplacianEstimate {
    cplx value;        // extrapolated from steps h, h/2, h/4
    double ratio = 0;  // (D(h) - D(h/2)) / (D(h/2) - D(h/4)); 16 for a 4th-order scheme
    bool ratio_checked = false;
};

/// Power k of the 4th-order five-point-per-axis discrete Laplacian of f at z,
/// composed k times, with two Richardson levels over h, h/2, h/4.
///
/// Throws StepTooCoarse when the Richardson ratio strays more than 20% from 16
/// while the ladder differences are still above the round-off floor.
LaplacianEstimate fd_laplacian_power(const std::function<cplx(cplx)>& f, cplx z, int k, double h);

}  // namespace polyfock
