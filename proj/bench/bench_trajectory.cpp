#include <benchmark/benchmark.h>

#include "negtrans/hamiltonian.hpp"
#include "negtrans/scenario.hpp"

#ifndef NEGTRANS_SCENARIO_DIR
#define NEGTRANS_SCENARIO_DIR "scenarios"
#endif

namespace {

const negtrans::TripartiteScenario& qutrit() {
    static const negtrans::TripartiteScenario sc =
        negtrans::build_scenario(negtrans::load_scenario(NEGTRANS_SCENARIO_DIR "/qutrit_mixed.json"));
    return sc;
}

void BM_TrajectorySerial(benchmark::State& state) {
    const auto grid = negtrans::linear_grid(0.0, 2.0, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(negtrans::trajectory_serial(qutrit(), grid));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_TrajectoryParallel(benchmark::State& state) {
    const auto grid = negtrans::linear_grid(0.0, 2.0, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(negtrans::trajectory(qutrit(), grid));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_TrajectorySerial)->Arg(51)->Arg(201)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TrajectoryParallel)->Arg(51)->Arg(201)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
