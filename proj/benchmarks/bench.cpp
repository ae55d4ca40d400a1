// Microbenchmarks for the hot paths: map iteration, left-branch Newton
// inversion, marker-table construction, transfer-operator assembly and
// application, and the correlation series.

#include "lsv/green_kubo.hpp"
#include "lsv/pullback.hpp"

#include <benchmark/benchmark.h>

using namespace lsv;

static void BM_MapApply(benchmark::State& state) {
    MapParams p(0.3);
    double x = 0.7;
    for (auto _ : state) {
        x = apply(p, x);
        benchmark::DoNotOptimize(x);
    }
}
BENCHMARK(BM_MapApply);

static void BM_LeftInverse(benchmark::State& state) {
    MapParams p(0.3);
    double y = 0.8;
    for (auto _ : state) {
        double x = left_inverse(p, y);
        benchmark::DoNotOptimize(x);
        y = 0.5 + 0.5 * x; // keep the argument moving
    }
}
BENCHMARK(BM_LeftInverse);

static void BM_MarkerTable(benchmark::State& state) {
    MapParams p(0.3);
    const auto depth = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        MarkerTable m(p, depth);
        benchmark::DoNotOptimize(m.y(depth));
    }
}
BENCHMARK(BM_MarkerTable)->Arg(1000)->Arg(10000)->Arg(100000);

static void BM_PullbackChain(benchmark::State& state) {
    MapParams p(0.3);
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        auto seq = pullback_sequence(p, 0.9, n);
        benchmark::DoNotOptimize(seq.back().dalpha);
    }
}
BENCHMARK(BM_PullbackChain)->Arg(100)->Arg(1000);

static void BM_TransferAssembly(benchmark::State& state) {
    MapParams p(0.3);
    MarkerTable m(p, 10000);
    const auto nb = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        InducedTransfer op(p, m, nb, 32);
        benchmark::DoNotOptimize(op.tail_deficit());
    }
}
BENCHMARK(BM_TransferAssembly)->Arg(100)->Arg(200);

static void BM_TransferApply(benchmark::State& state) {
    MapParams p(0.3);
    MarkerTable m(p, 10000);
    InducedTransfer op(p, m, 200, 32);
    GridFunction phi = op.mesh();
    for (auto& v : phi.values) v = 2.0;
    for (auto _ : state) {
        phi = op.apply(phi);
        double mass = phi.integral();
        for (auto& v : phi.values) v /= mass;
        benchmark::DoNotOptimize(phi.values[0]);
    }
}
BENCHMARK(BM_TransferApply);

static void BM_SigmaPipeline(benchmark::State& state) {
    MapParams p(0.2);
    GreenKuboSettings s;
    s.n_branch = 150;
    s.cells_l = 24;
    s.marker_depth = 20000;
    s.k_max = 80;
    for (auto _ : state) {
        auto rep = sigma_sq(p, obs_coordinate(), s, Method::Operator);
        benchmark::DoNotOptimize(rep.sigma_sq);
    }
}
BENCHMARK(BM_SigmaPipeline)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
