#include <benchmark/benchmark.h>

#include "xfem2d/analytic.hpp"
#include "xfem2d/assembly.hpp"

using namespace xfem2d;

namespace {

LaplaceBC plate_bc(const PlateField& exact) {
    LaplaceBC bc;
    bc.dirichlet_value = [&exact](double x, double y, int side) {
        return exact.potential(x, y, side);
    };
    bc.flux = [](double, double, double, double, int) { return 0.0; };
    return bc;
}

}  // namespace

static void BM_AssemblePlateFEM(benchmark::State& state) {
    const double dh = 1.0 / static_cast<double>(state.range(0));
    const Mesh mesh = build_plate_domain(1.0, 2.0, dh, ElemOrder::quadratic);
    const EnrichmentPlan plan = no_enrichment(mesh.n_nodes());
    const PlateField exact(1.0);
    const LaplaceBC bc = plate_bc(exact);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            assemble_plate_system(mesh, plan, nullptr, bc, QuadratureOptions{}));
    }
    state.SetLabel(std::to_string(mesh.n_nodes()) + " nodes");
}
BENCHMARK(BM_AssemblePlateFEM)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_AssemblePlateXFEM(benchmark::State& state) {
    const double dh = 1.0 / static_cast<double>(state.range(0));
    const Mesh mesh = build_plate_domain(1.0, 2.0, dh, ElemOrder::quadratic);
    const PlateField exact(1.0);
    const EnrichmentBasis basis = EnrichmentBasis::analytic_field(mesh.corners, exact);
    const EnrichmentPlan plan =
        select_enriched_nodes(mesh, basis, Strategy::radius, 0.2, 1);
    const LaplaceBC bc = plate_bc(exact);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            assemble_plate_system(mesh, plan, &basis, bc, QuadratureOptions{}));
    }
    state.SetLabel(std::to_string(plan.total_dofs()) + " dofs");
}
BENCHMARK(BM_AssemblePlateXFEM)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_SingularElementMatrix(benchmark::State& state) {
    const Mesh mesh = build_rectangle_domain(2.0, 1.0, 40.0, 30.0, 8, 16, 8,
                                             ElemOrder::quadratic);
    const EnrichmentBasis basis = EnrichmentBasis::corner_flow(mesh.corners, 3);
    const EnrichmentPlan plan =
        select_enriched_nodes(mesh, basis, Strategy::radius, 0.2, 3);
    Index singular = kInvalidIndex;
    for (Index e = 0; e < mesh.n_elements(); ++e)
        if (element_dofs(mesh, e, plan).cls == ElementClass::singular) singular = e;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            element_matrix(mesh, singular, plan, &basis, QuadratureOptions{}));
    }
}
BENCHMARK(BM_SingularElementMatrix)->Unit(benchmark::kMillisecond);
