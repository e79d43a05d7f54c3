// Microbenchmarks for the numerical hot spots: special-function evaluation
// per region, root finding, closed-form trace evaluation, and the O(N^2)
// Volterra stepping.
#include <benchmark/benchmark.h>

#include <complex>

#include "bandedge/closedform.hpp"
#include "bandedge/kernels.hpp"
#include "bandedge/params.hpp"
#include "bandedge/polyroots.hpp"
#include "bandedge/specfun.hpp"
#include "bandedge/volterra.hpp"

using cplx = std::complex<double>;

namespace {

void BM_erfcx_series(benchmark::State& state) {
    const cplx z(2.0, 1.0);  // |z| < 4: power-series region
    for (auto _ : state) {
        benchmark::DoNotOptimize(bandedge::erfcx(z));
    }
}
BENCHMARK(BM_erfcx_series);

void BM_erfcx_continued_fraction(benchmark::State& state) {
    const cplx z(6.0, 1.0);  // |z| >= 4 in the sector: Lentz continued fraction
    for (auto _ : state) {
        benchmark::DoNotOptimize(bandedge::erfcx(z));
    }
}
BENCHMARK(BM_erfcx_continued_fraction);

void BM_erfcx_near_axis(benchmark::State& state) {
    const cplx z(0.1, 8.0);  // |z| >= 6 near the axis: asymptotic series
    for (auto _ : state) {
        benchmark::DoNotOptimize(bandedge::erfcx(z));
    }
}
BENCHMARK(BM_erfcx_near_axis);

void BM_quintic_roots(benchmark::State& state) {
    bandedge::SystemParams p;
    p.gamma = 1.0;
    p.delta_g = 0.7;
    const auto q = bandedge::build_quintic(p);
    for (auto _ : state) {
        benchmark::DoNotOptimize(bandedge::find_roots(q));
    }
}
BENCHMARK(BM_quintic_roots);

void BM_root_system(benchmark::State& state) {
    bandedge::SystemParams p;
    p.gamma = 0.2;
    p.delta_g = 0.4;
    for (auto _ : state) {
        benchmark::DoNotOptimize(bandedge::build_root_system(p));
    }
}
BENCHMARK(BM_root_system);

void BM_eval_b1(benchmark::State& state) {
    bandedge::SystemParams p;
    p.gamma = 0.2;
    const auto rs = bandedge::build_root_system(p);
    const bandedge::TimeGrid grid{50.0, static_cast<int>(state.range(0))};
    for (auto _ : state) {
        benchmark::DoNotOptimize(bandedge::eval_b1(rs, grid));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_eval_b1)->Arg(1000)->Arg(5000);

void BM_kernel_laplace(benchmark::State& state) {
    const auto spec = bandedge::KernelSpec::edge(1.0, 0.4);
    const cplx s(0.3, -1.2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(bandedge::kernel_laplace(spec, s));
    }
}
BENCHMARK(BM_kernel_laplace);

void BM_volterra(benchmark::State& state) {
    bandedge::SystemParams p;
    p.gamma = 1.0;
    const auto spec = bandedge::KernelSpec::from_params(p);
    bandedge::SolverConfig cfg;
    cfg.grid = bandedge::TimeGrid{20.0, static_cast<int>(state.range(0))};
    for (auto _ : state) {
        benchmark::DoNotOptimize(bandedge::solve_perturbative(p, spec, cfg));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_volterra)->Arg(1000)->Arg(4000);

}  // namespace

BENCHMARK_MAIN();
