#include <filesystem>
#include <sstream>

#include <doctest.h>

#include "polyfock/grid_function.hpp"
#include "support/property.hpp"

using namespace polyfock;

namespace {

GridFunction random_grid(prop::Rng& rng)
{
    const int n = 2 * prop::integer(rng, 1, 24);
    const double r = prop::uniform(rng, 0.5, 20.0);
    std::vector<cplx> v(static_cast<std::size_t>(n) * n);
    for (auto& x : v) {
        x = {prop::uniform(rng, -1e3, 1e3), prop::uniform(rng, -1e-3, 1e-3)};
    }
    return GridFunction(r, n, std::move(v));
}

}  // namespace

TEST_SUITE("grid")
{
    TEST_CASE("cell-centred coordinates are symmetric about the origin")
    {
        const auto g = GridFunction::sample(4.0, 8, [](cplx z) { return z; });
        CHECK(g.spacing() == 1.0);
        CHECK(g.coordinate(0) == -3.5);
        CHECK(g.coordinate(7) == 3.5);
        CHECK(g.at(2, 5) == cplx(1.5, -1.5));
        CHECK(g.nearest_index(0.2) == 4);
        CHECK(g.nearest_index(-100.0) == 0);
        CHECK(g.nearest_index(100.0) == 7);
        CHECK(g.boundary_max() == doctest::Approx(std::abs(cplx(3.5, 3.5))));
        CHECK(g.interior_indices(2.0).size() == 16);
    }

    TEST_CASE("construction rejects malformed grids")
    {
        CHECK_THROWS_AS(GridFunction(1.0, 3, std::vector<cplx>(9)), GridError);
        CHECK_THROWS_AS(GridFunction(0.0, 2, std::vector<cplx>(4)), GridError);
        CHECK_THROWS_AS(GridFunction(1.0, 2, std::vector<cplx>(3)), GridError);
        CHECK_THROWS_AS(GridFunction(1.0, 2, std::vector<cplx>(4, cplx(NAN, 0))), GridError);
    }

    TEST_CASE("BGF1 round-trips bit for bit")
    {
        prop::for_all("bgf round trip", 25, random_grid, [](const GridFunction& g) {
            std::stringstream buf;
            write_bgf(buf, g);
            CHECK(buf.str().size() == 4 + 8 + 4 + 16 * g.values().size());
            const auto back = read_bgf(buf);
            CHECK(back.conformable(g));
            CHECK(back.values() == g.values());
        });
    }

    TEST_CASE("BGF1 header layout is little endian")
    {
        const GridFunction g(2.0, 2, {1.0, 2.0, 3.0, 4.0});
        std::stringstream buf;
        write_bgf(buf, g);
        const std::string s = buf.str();
        CHECK(s.substr(0, 4) == "BGF1");
        CHECK(static_cast<unsigned char>(s[12]) == 2);
        CHECK(s[13] == 0);
        CHECK(static_cast<unsigned char>(s[11]) == 0x40);  // 2.0 = 0x4000000000000000
    }

    TEST_CASE("corrupt BGF1 streams are rejected")
    {
        const GridFunction g(2.0, 4, std::vector<cplx>(16, 1.0));
        std::stringstream buf;
        write_bgf(buf, g);
        const std::string good = buf.str();

        std::stringstream magic("XGF1" + good.substr(4));
        CHECK_THROWS_AS(read_bgf(magic), GridError);
        std::stringstream truncated(good.substr(0, good.size() - 5));
        CHECK_THROWS_AS(read_bgf(truncated), GridError);
        std::string odd = good;
        odd[12] = 3;
        std::stringstream odd_n(odd);
        CHECK_THROWS_AS(read_bgf(odd_n), GridError);
    }

    TEST_CASE("file round trip and missing files")
    {
        const auto dir = std::filesystem::temp_directory_path() / "polyfock_grid_test";
        std::filesystem::create_directories(dir);
        const auto g = GridFunction::sample(3.0, 6, [](cplx z) { return z * z; });
        write_bgf(dir / "g.bgf", g);
        CHECK(read_bgf(dir / "g.bgf").values() == g.values());
        CHECK_THROWS_AS(read_bgf(dir / "missing.bgf"), std::runtime_error);
        std::filesystem::remove_all(dir);
    }

    TEST_CASE("CSV has a header and one line per sample")
    {
        const auto g = GridFunction::sample(1.0, 4, [](cplx z) { return z; });
        std::ostringstream all;
        write_csv(all, g);
        const std::string s = all.str();
        CHECK(s.rfind("x,y,re,im\n", 0) == 0);
        CHECK(std::count(s.begin(), s.end(), '\n') == 17);
        std::ostringstream row;
        write_csv(row, g, 2);
        const std::string r = row.str();
        CHECK(std::count(r.begin(), r.end(), '\n') == 5);
        CHECK_THROWS_AS(write_csv(row, g, 4), GridError);
    }
}
