#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "hyperwalk/gyro.hpp"
#include "hyperwalk/heat_kernel.hpp"
#include "hyperwalk/radial_density.hpp"
#include "hyperwalk/spectral.hpp"
#include "hyperwalk/walk_sim.hpp"

using namespace hyperwalk;

static void BM_MobiusAdd(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::vector<double> x(n, 0.3 / std::sqrt(double(n))), y(n, -0.2 / std::sqrt(double(n))), out(n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernel::mobius_add(x, y, out));
        benchmark::ClobberMemory();
    }
}
BENCHMARK(BM_MobiusAdd)->Arg(2)->Arg(3)->Arg(5);

static void BM_Phi(benchmark::State& state) {
    const Dimension n(static_cast<int>(state.range(0)));
    double lam = 0.5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(phi(lam, 1.3, n));
        lam = lam < 20.0 ? lam + 0.37 : 0.5;
    }
}
BENCHMARK(BM_Phi)->Arg(2)->Arg(3)->Arg(5);

static void BM_HeatKernel(benchmark::State& state) {
    const Dimension n(static_cast<int>(state.range(0)));
    double eta = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(hk(1.0, eta, n));
        eta = eta < 5.0 ? eta + 0.013 : 0.0;
    }
}
BENCHMARK(BM_HeatKernel)->Arg(2)->Arg(3)->Arg(5);

static void BM_SampleEta(benchmark::State& state) {
    const auto p = make_bump(1.0, Dimension(3));
    RandomStream rng(1);
    sample_eta(p, 0.5);
    for (auto _ : state) benchmark::DoNotOptimize(sample_eta(p, uniform_open(rng)));
}
BENCHMARK(BM_SampleEta);

static void BM_RunWalk(benchmark::State& state) {
    WalkConfig cfg{make_bump(1.0, Dimension(3))};
    cfg.steps = state.range(0);
    cfg.paths = 256;
    cfg.master_seed = 1;
    for (auto _ : state) benchmark::DoNotOptimize(run_walk(cfg, 1).terminal_etas.data());
    state.SetItemsProcessed(state.iterations() * cfg.steps * cfg.paths);
}
BENCHMARK(BM_RunWalk)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
