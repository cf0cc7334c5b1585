#include <benchmark/benchmark.h>

#include "microgrid/dispatch.hpp"
#include "microgrid/optimizer.hpp"
#include "microgrid/scenario_config.hpp"

using namespace microgrid;

namespace {

const ScenarioData& data() {
    static const ScenarioData d = prepare_data(ScenarioConfig{}, false);
    return d;
}

SystemConfig scenario_one(Strategy s) {
    SystemConfig cfg;
    cfg.fleet = {714, 67, 1059, 490.0, 331.0};
    cfg.strategy = s;
    return cfg;
}

}  // namespace

static void BM_SimulateYearLoadFollowing(benchmark::State& state) {
    const auto cfg = scenario_one(Strategy::load_following);
    for (auto _ : state) benchmark::DoNotOptimize(simulate_year(cfg, data().resources, data().load));
}
BENCHMARK(BM_SimulateYearLoadFollowing)->Unit(benchmark::kMillisecond);

static void BM_SimulateYearCycleCharging(benchmark::State& state) {
    const auto cfg = scenario_one(Strategy::cycle_charging);
    for (auto _ : state) benchmark::DoNotOptimize(simulate_year(cfg, data().resources, data().load));
}
BENCHMARK(BM_SimulateYearCycleCharging)->Unit(benchmark::kMillisecond);

static void BM_PrepareData(benchmark::State& state) {
    ScenarioConfig c;
    for (auto _ : state) benchmark::DoNotOptimize(prepare_data(c, false));
}
BENCHMARK(BM_PrepareData)->Unit(benchmark::kMillisecond);

static void BM_OptimizeSmallGrid(benchmark::State& state) {
    const EvaluationInputs in{SystemConfig{}, data().resources, data().load, PriceSet{}, FinanceSpec{}, std::nullopt};
    SearchSpace space;
    space.n_pv = {500, 714, 900};
    space.n_wt = {0, 67, 134};
    space.n_batt = {800, 1059, 1300};
    space.genset_kw = {490.0};
    space.converter_kw = {331.0};
    const auto workers = static_cast<unsigned>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(optimize(space, in, Constraints{0.001, 0.9}, workers));
}
BENCHMARK(BM_OptimizeSmallGrid)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
