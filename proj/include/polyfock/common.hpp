#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace polyfock {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// Selects between the OpenMP kernel and its serial reference.
enum class Execution { serial, parallel };

/// A quadrature did not converge under order doubling.
class InsufficientQuadrature : public std::runtime_error {
public:
    explicit InsufficientQuadrature(const std::string& what) : std::runtime_error(what) {}
};

/// Richardson ratios of a finite-difference ladder are off the scheme's order.
class StepTooCoarse : public std::runtime_error {
public:
    explicit StepTooCoarse(const std::string& what) : std::runtime_error(what) {}
};

/// Grid too small or grids not conformable.
class GridError : public std::runtime_error {
public:
    explicit GridError(const std::string& what) : std::runtime_error(what) {}
};

/// Root scan found nothing nonzero inside the search disk.
class NoRootFound : public std::runtime_error {
public:
    explicit NoRootFound(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace polyfock
