#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "pllid/ensemble.hpp"
#include "pllid/fit.hpp"
#include "pllid/model.hpp"
#include "pllid/smoothing.hpp"
#include "pllid/sort_map.hpp"

namespace {

const pllid::DimensionlessParams kRegime{4.77, 9.53, 0.062, 1.0};

pllid::TimeSeries record(std::size_t samples) {
  pllid::SimulationOptions opts;
  opts.dt = 1e-3;
  opts.sample_every = 10;
  opts.transient = 100000;
  opts.n_steps = opts.transient + samples * opts.sample_every;
  return pllid::simulate(kRegime, pllid::kDefaultInitialState, opts).y;
}

void BM_Rk4Step(benchmark::State& state) {
  pllid::ModelState s = pllid::kDefaultInitialState;
  for (auto _ : state) {
    s = pllid::rk4_step(s, kRegime, 1e-3);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_Rk4Step);

void BM_Simulate(benchmark::State& state) {
  pllid::SimulationOptions opts;
  opts.n_steps = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(pllid::simulate(kRegime, pllid::kDefaultInitialState, opts));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Simulate)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_SortMap(benchmark::State& state) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  std::vector<double> keys(static_cast<std::size_t>(state.range(0)));
  for (double& k : keys) k = u(rng);
  for (auto _ : state) benchmark::DoNotOptimize(pllid::build_sort_map(keys));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SortMap)->Arg(1 << 16)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

void BM_FitIntegrated(benchmark::State& state) {
  const auto ens = pllid::assemble_states(record(static_cast<std::size_t>(state.range(0))), 0.0, 1.0, false);
  for (auto _ : state) benchmark::DoNotOptimize(pllid::fit_integrated(ens, 0.0, 1));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FitIntegrated)->Arg(100000)->Arg(500000)->Unit(benchmark::kMillisecond);

void BM_LowpassSmooth(benchmark::State& state) {
  const auto y = record(200000);
  const double cutoff = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(pllid::lowpass_smooth(y, cutoff));
  state.SetItemsProcessed(state.iterations() * 200000);
}
BENCHMARK(BM_LowpassSmooth)->Arg(20)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
