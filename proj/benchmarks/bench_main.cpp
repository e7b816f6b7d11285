#include "qghs/commutator.hpp"
#include "qghs/diagnostics.hpp"
#include "qghs/dynamics.hpp"
#include "qghs/elliptic.hpp"
#include "qghs/littlewood_paley.hpp"
#include "qghs/parallel.hpp"
#include "qghs/rng.hpp"
#include "qghs/spectral_ops.hpp"
#include "qghs/transform.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace qghs;

void bm_transform_roundtrip(benchmark::State& state) {
    TorusGrid g(static_cast<std::uint32_t>(state.range(0)), 2.0 * M_PI);
    SpectralField2D u = random_band_field(g, 42, 1, g.n / 4.0, 1.0);
    for (auto _ : state) {
        PhysField2D p = inverse_transform(u);
        benchmark::DoNotOptimize(forward_transform(p));
    }
}
BENCHMARK(bm_transform_roundtrip)->Arg(64)->Arg(128)->Arg(256);

void bm_elliptic_split(benchmark::State& state) {
    TorusGrid g(64, 2.0 * M_PI);
    SlabGrid slab(g, static_cast<std::uint32_t>(state.range(0)), M_PI);
    SpectralField2D th = random_band_field(g, 7, 1, 8, 1.0);
    OmegaInit oi;
    oi.kind = "band_profile";
    oi.amp = 0.5;
    oi.seed = 8;
    LayeredSpectral3D om = make_omega(oi, slab);
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_psi1(th, slab));
        benchmark::DoNotOptimize(solve_psi2(om));
    }
}
BENCHMARK(bm_elliptic_split)->Arg(32)->Arg(64);

void bm_step_boundary(benchmark::State& state) {
    TorusGrid g(128, 2.0 * M_PI);
    SlabGrid slab(g, 16, M_PI);
    LayeredSpectral3D om;
    om.slab = slab;
    SimState s(random_band_field(g, 11, 1, 6, 0.8), om, 0.0);
    StepParams p;
    p.dt = 0.002;
    ForcingSpec f;
    for (auto _ : state) benchmark::DoNotOptimize(step_rk4(s, p, f));
}
BENCHMARK(bm_step_boundary);

void bm_step_interior(benchmark::State& state) {
    TorusGrid g(64, 2.0 * M_PI);
    SlabGrid slab(g, 16, M_PI);
    OmegaInit oi;
    oi.kind = "band_profile";
    oi.amp = 0.4;
    oi.seed = 13;
    SimState s(random_band_field(g, 12, 1, 6, 0.8), make_omega(oi, slab), 0.0);
    StepParams p;
    p.dt = 0.002;
    ForcingSpec f;
    for (auto _ : state) benchmark::DoNotOptimize(step_rk4(s, p, f));
}
BENCHMARK(bm_step_interior);

void bm_besov_norm(benchmark::State& state) {
    TorusGrid g(128, 2.0 * M_PI);
    SpectralField2D u = random_band_field(g, 21, 1, 40, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(besov_norm(u, 0.5, 3.0));
}
BENCHMARK(bm_besov_norm);

void bm_onsager_flux(benchmark::State& state) {
    TorusGrid g(64, 2.0 * M_PI);
    SlabGrid slab(g, 16, M_PI);
    LayeredSpectral3D om;
    om.slab = slab;
    SimState s(random_band_field(g, 31, 1, 5, 1.0), om, 0.0);
    const double eps = 4.0 * g.dx();
    for (auto _ : state) benchmark::DoNotOptimize(onsager_flux(s, eps));
}
BENCHMARK(bm_onsager_flux);

void bm_flux_commutator(benchmark::State& state) {
    TorusGrid g(128, 2.0 * M_PI);
    SpectralField2D th = random_band_field(g, 41, 1, 20, 1.0);
    SpectralField2D phi = random_band_field(g, 43, 1, 5, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(nonlinear_flux_commutator(th, phi));
}
BENCHMARK(bm_flux_commutator);

void bm_residual_snapshot(benchmark::State& state) {
    TorusGrid g(64, 2.0 * M_PI);
    SlabGrid slab(g, 16, M_PI);
    LayeredSpectral3D om;
    om.slab = slab;
    SimState s(random_band_field(g, 51, 1, 6, 0.5), om, 0.0);
    TestFunctionSpec c, su;
    c.kind = TestFunctionSpec::Kind::closure;
    c.seed = 61;
    su.kind = TestFunctionSpec::Kind::surface;
    su.seed = 62;
    std::vector<TestFunction> fns;
    fns.emplace_back(c, slab, 1.0);
    fns.emplace_back(su, slab, 1.0);
    ResidualOptions ro;
    ResidualEvaluator ev(std::move(fns), ro);
    for (auto _ : state) {
        ev.add_snapshot(s);
        s.t += 1e-6;
    }
}
BENCHMARK(bm_residual_snapshot);

} // namespace

int main(int argc, char** argv) {
    qghs::set_thread_count(1);
    benchmark::Initialize(&argc, argv);
    if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
    benchmark::RunSpecifiedBenchmarks();
    return 0;
}
