#include <benchmark/benchmark.h>

#include <cmath>

#include "xfem2d/quadrature.hpp"

using namespace xfem2d;

static void BM_GaussRule2D(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(gauss_rule_2d(n));
    }
}
BENCHMARK(BM_GaussRule2D)->Arg(2)->Arg(3)->Arg(6);

static void BM_AdaptiveSingularCubature(benchmark::State& state) {
    AdaptiveConfig cfg;
    cfg.tolerance = std::pow(10.0, -static_cast<double>(state.range(0)));
    auto f = [](double xi, double eta) {
        return std::pow(std::hypot(xi + 1.0, eta + 1.0), -2.0 / 3.0);
    };
    for (auto _ : state) {
        benchmark::DoNotOptimize(adaptive_singular_cubature(f, 0, cfg, -2.0 / 3.0));
    }
}
BENCHMARK(BM_AdaptiveSingularCubature)->Arg(6)->Arg(8)->Arg(10);

static void BM_AdaptiveLineQuadrature(benchmark::State& state) {
    AdaptiveConfig cfg;
    cfg.tolerance = std::pow(10.0, -static_cast<double>(state.range(0)));
    auto f = [](double x) { return std::pow(x, -2.0 / 3.0); };
    for (auto _ : state) {
        benchmark::DoNotOptimize(adaptive_line_quadrature(f, 0.0, 1.0, true, cfg));
    }
}
BENCHMARK(BM_AdaptiveLineQuadrature)->Arg(6)->Arg(10);

BENCHMARK_MAIN();
