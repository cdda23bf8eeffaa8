#include <benchmark/benchmark.h>

#include "xfem2d/analytic.hpp"
#include "xfem2d/cases.hpp"

using namespace xfem2d;

static void BM_PlateSolve(benchmark::State& state) {
    CaseConfig cfg;
    cfg.kind = CaseKind::flat_plate;
    cfg.method = Method::xfem;
    cfg.order = ElemOrder::quadratic;
    cfg.plate.delta_h = 1.0 / static_cast<double>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_plate(cfg));
    }
}
BENCHMARK(BM_PlateSolve)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_RadiationSolve(benchmark::State& state) {
    CaseConfig cfg;
    cfg.kind = CaseKind::heaving_rectangle;
    cfg.method = Method::xfem;
    cfg.order = ElemOrder::quadratic;
    cfg.enrichment.n_terms = 3;
    cfg.rect = {static_cast<int>(state.range(0)), 120, 20, ""};
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_rectangle(cfg, 1.0));
    }
}
BENCHMARK(BM_RadiationSolve)->Arg(4)->Arg(15)->Unit(benchmark::kMillisecond);
