// OpenMP kernels against their serial references.

#include <benchmark/benchmark.h>

#include "polyfock/berezin.hpp"
#include "polyfock/exotic.hpp"

using namespace polyfock;

namespace {

std::vector<ComplexPoint> probes(int count)
{
    std::vector<ComplexPoint> p;
    for (int i = 0; i < count; ++i) {
        p.push_back(ComplexPoint{std::polar(0.05 * i, 0.37 * i)});
    }
    return p;
}

void quadrature_batch(benchmark::State& state, Execution exec)
{
    const auto cfg = BerezinConfig::defaults({static_cast<int>(state.range(0)), 1});
    const auto f = on_plane([](cplx w) { return std::exp(-0.5 * std::norm(w)) * w; });
    const auto p = probes(64);
    for (auto _ : state) {
        benchmark::DoNotOptimize(berezin_quadrature_batch(cfg, f, p, exec));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(p.size()));
}

void convolution(benchmark::State& state, bool fft)
{
    const auto cfg = BerezinConfig::defaults({2, 1}, BerezinMethod::grid_convolution);
    const auto g = GridFunction::sample(10.0, static_cast<int>(state.range(0)),
                                        [](cplx z) { return std::exp(-std::norm(z)); });
    for (auto _ : state) {
        benchmark::DoNotOptimize(fft ? berezin_convolve_grid(cfg, g) : berezin_convolve_direct(cfg, g));
    }
}

void root_scan(benchmark::State& state, Execution exec)
{
    for (auto _ : state) {
        benchmark::DoNotOptimize(find_exotic_roots(2, static_cast<double>(state.range(0)), 64, exec));
    }
}

}  // namespace

BENCHMARK_CAPTURE(quadrature_batch, serial, Execution::serial)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(quadrature_batch, parallel, Execution::parallel)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(convolution, direct, false)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(convolution, fft, true)->Arg(32)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(root_scan, serial, Execution::serial)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(root_scan, parallel, Execution::parallel)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
