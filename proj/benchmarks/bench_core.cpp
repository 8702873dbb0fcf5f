#include <benchmark/benchmark.h>

#include "bzwave/iteration.hpp"
#include "bzwave/pde_sim.hpp"
#include "bzwave/speed_bounds.hpp"
#include "bzwave/supersolutions.hpp"

using namespace bzwave;

static void BM_CCirc(benchmark::State& state) {
    const BzParams p(0.5, 5, 0.5);
    for (auto _ : state) benchmark::DoNotOptimize(c_circ(p));
}
BENCHMARK(BM_CCirc);

// One application of the integral operator; cost is linear in the node count.
static void BM_ApplyN(benchmark::State& state) {
    const BzParams p(0.5, 5);
    const Grid g(-60, 60, static_cast<std::size_t>(state.range(0)));
    const auto up = build_upper_auto(p, 2, g);
    const IterConfig cfg;
    for (auto _ : state) benchmark::DoNotOptimize(apply_N(up.profile, p, 2, cfg));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ApplyN)->Arg(1201)->Arg(4801)->Arg(19201)->Complexity(benchmark::oN);

static void BM_UpperAssembly(benchmark::State& state) {
    const BzParams p(0.5, 5);
    const Grid g = Grid::standard();
    for (auto _ : state) benchmark::DoNotOptimize(build_upper_auto(p, 2, g));
}
BENCHMARK(BM_UpperAssembly)->Unit(benchmark::kMillisecond);

static void BM_SolveFront(benchmark::State& state) {
    const BzParams p(0.5, 5);
    const Grid g = Grid::standard();
    const auto up = build_upper_auto(p, 2, g);
    const auto lo = build_lower(p, 2, g, up.profile);
    for (auto _ : state) benchmark::DoNotOptimize(solve_front(up.profile, lo.profile, p, 2));
}
BENCHMARK(BM_SolveFront)->Unit(benchmark::kMillisecond);

static void BM_SimStep(benchmark::State& state) {
    const BzParams p(5, 0.5, 0.5);
    SimConfig cfg;
    cfg.h = 0.5;
    auto s = init_state(cfg);
    for (auto _ : state) step(s, p, cfg);
}
BENCHMARK(BM_SimStep)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
