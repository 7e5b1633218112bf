#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "polyfock/common.hpp"

namespace polyfock {

/// Complex samples at the N x N cell centers of the box [-R, R]^2.
///
/// Sample (row, col) sits at x = -R + (col + 1/2) h, y = -R + (row + 1/2) h
/// with h = 2R/N, stored row-major. Values are immutable after construction.
class GridFunction {
public:
    GridFunction(double half_width, int resolution, std::vector<cplx> values);

    /// Samples f at every cell center, in parallel.
    static GridFunction sample(double half_width, int resolution, const std::function<cplx(cplx)>& f);

    double half_width() const { return half_width_; }
    int resolution() const { return resolution_; }
    double spacing() const { return 2.0 * half_width_ / resolution_; }
    double coordinate(int index) const { return -half_width_ + (index + 0.5) * spacing(); }
    cplx point(int row, int col) const { return {coordinate(col), coordinate(row)}; }

    const std::vector<cplx>& values() const { return values_; }
    const cplx& at(int row, int col) const
    {
        return values_[static_cast<std::size_t>(row) * resolution_ + col];
    }

    bool conformable(const GridFunction& other) const
    {
        return half_width_ == other.half_width_ && resolution_ == other.resolution_;
    }

    /// Largest magnitude on the outermost ring of samples.
    double boundary_max() const;
    double interior_max() const;
    /// Samples with |x|, |y| <= R - band, as (row, col) pairs.
    std::vector<std::pair<int, int>> interior_indices(double band) const;
    /// Nearest sample index to a coordinate, clamped to the grid.
    int nearest_index(double coordinate) const;

private:
    double half_width_;
    int resolution_;
    std::vector<cplx> values_;
};

/// BGF1: "BGF1", R (float64 LE), N (uint32 LE), then N^2 (re, im) float64 LE pairs.
void write_bgf(std::ostream& out, const GridFunction& grid);
GridFunction read_bgf(std::istream& in);
void write_bgf(const std::filesystem::path& path, const GridFunction& grid);
GridFunction read_bgf(const std::filesystem::path& path);

/// CSV with header "x,y,re,im"; all samples, or one row when `row` is set.
void write_csv(std::ostream& out, const GridFunction& grid, std::optional<int> row = std::nullopt);
void write_csv(const std::filesystem::path& path, const GridFunction& grid, std::optional<int> row = std::nullopt);

}  // namespace polyfock
