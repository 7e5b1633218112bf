#include "polyfock/grid_function.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>

namespace polyfock {

GridFunction::GridFunction(double half_width, int resolution, std::vector<cplx> values)
    : half_width_(half_width), resolution_(resolution), values_(std::move(values))
{
    if (!(half_width_ > 0.0) || !std::isfinite(half_width_)) {
        throw GridError("GridFunction: half width must be positive and finite");
    }
    if (resolution_ <= 0 || resolution_ % 2 != 0) {
        throw GridError("GridFunction: resolution must be a positive even integer");
    }
    if (values_.size() != static_cast<std::size_t>(resolution_) * resolution_) {
        throw GridError("GridFunction: expected N^2 samples");
    }
    for (const cplx& v : values_) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw GridError("GridFunction: samples must be finite");
        }
    }
}

GridFunction GridFunction::sample(double half_width, int resolution, const std::function<cplx(cplx)>& f)
{
    if (resolution <= 0 || resolution % 2 != 0) {
        throw GridError("GridFunction: resolution must be a positive even integer");
    }
    const double h = 2.0 * half_width / resolution;
    std::vector<cplx> values(static_cast<std::size_t>(resolution) * resolution);
#pragma omp parallel for schedule(static)
    for (int row = 0; row < resolution; ++row) {
        const double y = -half_width + (row + 0.5) * h;
        for (int col = 0; col < resolution; ++col) {
            const double x = -half_width + (col + 0.5) * h;
            values[static_cast<std::size_t>(row) * resolution + col] = f(cplx(x, y));
        }
    }
    return GridFunction(half_width, resolution, std::move(values));
}

double GridFunction::boundary_max() const
{
    double m = 0.0;
    const int last = resolution_ - 1;
    for (int i = 0; i < resolution_; ++i) {
        m = std::max({m, std::abs(at(0, i)), std::abs(at(last, i)), std::abs(at(i, 0)), std::abs(at(i, last))});
    }
    return m;
}

double GridFunction::interior_max() const
{
    double m = 0.0;
    for (int row = 1; row + 1 < resolution_; ++row) {
        for (int col = 1; col + 1 < resolution_; ++col) {
            m = std::max(m, std::abs(at(row, col)));
        }
    }
    return m;
}

std::vector<std::pair<int, int>> GridFunction::interior_indices(double band) const
{
    const double limit = half_width_ - band;
    std::vector<std::pair<int, int>> out;
    for (int row = 0; row < resolution_; ++row) {
        if (std::abs(coordinate(row)) > limit) {
            continue;
        }
        for (int col = 0; col < resolution_; ++col) {
            if (std::abs(coordinate(col)) <= limit) {
                out.emplace_back(row, col);
            }
        }
    }
    return out;
}

int GridFunction::nearest_index(double coordinate) const
{
    const int idx = static_cast<int>(std::floor((coordinate + half_width_) / spacing()));
    return std::clamp(idx, 0, resolution_ - 1);
}

namespace {

constexpr std::array<char, 4> kMagic{'B', 'G', 'F', '1'};

void put_u64_le(std::ostream& out, std::uint64_t v)
{
    std::array<char, 8> bytes{};
    for (int i = 0; i < 8; ++i) {
        bytes[i] = static_cast<char>((v >> (8 * i)) & 0xffu);
    }
    out.write(bytes.data(), bytes.size());
}

void put_f64_le(std::ostream& out, double v)
{
    put_u64_le(out, std::bit_cast<std::uint64_t>(v));
}

std::uint64_t get_le(std::istream& in, int width)
{
    std::array<unsigned char, 8> bytes{};
    in.read(reinterpret_cast<char*>(bytes.data()), width);
    if (!in) {
        throw GridError("BGF1: truncated stream");
    }
    std::uint64_t v = 0;
    for (int i = 0; i < width; ++i) {
        v |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
    }
    return v;
}

double get_f64_le(std::istream& in)
{
    return std::bit_cast<double>(get_le(in, 8));
}

}  // namespace

void write_bgf(std::ostream& out, const GridFunction& grid)
{
    out.write(kMagic.data(), kMagic.size());
    put_f64_le(out, grid.half_width());
    const auto n = static_cast<std::uint32_t>(grid.resolution());
    std::array<char, 4> nbytes{};
    for (int i = 0; i < 4; ++i) {
        nbytes[i] = static_cast<char>((n >> (8 * i)) & 0xffu);
    }
    out.write(nbytes.data(), nbytes.size());
    for (const cplx& v : grid.values()) {
        put_f64_le(out, v.real());
        put_f64_le(out, v.imag());
    }
}

GridFunction read_bgf(std::istream& in)
{
    std::array<char, 4> magic{};
    in.read(magic.data(), magic.size());
    if (!in || magic != kMagic) {
        throw GridError("BGF1: bad magic");
    }
    const double half_width = get_f64_le(in);
    const auto n = static_cast<std::uint32_t>(get_le(in, 4));
    if (n == 0 || n > (1u << 15)) {
        throw GridError("BGF1: implausible resolution " + std::to_string(n));
    }
    std::vector<cplx> values(static_cast<std::size_t>(n) * n);
    for (auto& v : values) {
        const double re = get_f64_le(in);
        const double im = get_f64_le(in);
        v = cplx(re, im);
    }
    return GridFunction(half_width, static_cast<int>(n), std::move(values));
}

void write_bgf(const std::filesystem::path& path, const GridFunction& grid)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    }
    write_bgf(out, grid);
    if (!out) {
        throw std::runtime_error("write failed for '" + path.string() + "'");
    }
}

GridFunction read_bgf(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open '" + path.string() + "' for reading");
    }
    try {
        return read_bgf(in);
    } catch (const GridError& e) {
        throw GridError(path.string() + ": " + e.what());
    }
}

void write_csv(std::ostream& out, const GridFunction& grid, std::optional<int> row)
{
    out << "x,y,re,im\n";
    out << std::setprecision(std::numeric_limits<double>::max_digits10);
    const int first = row.value_or(0);
    const int last = row ? *row + 1 : grid.resolution();
    if (first < 0 || last > grid.resolution()) {
        throw GridError("write_csv: row out of range");
    }
    for (int r = first; r < last; ++r) {
        for (int c = 0; c < grid.resolution(); ++c) {
            const cplx v = grid.at(r, c);
            out << grid.coordinate(c) << ',' << grid.coordinate(r) << ',' << v.real() << ',' << v.imag() << '\n';
        }
    }
}

void write_csv(const std::filesystem::path& path, const GridFunction& grid, std::optional<int> row)
{
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    }
    write_csv(out, grid, row);
}

}  // namespace polyfock
