// Serial vs OpenMP kernels on the same inputs.

#include <benchmark/benchmark.h>

#include "sdof/analysis.hpp"
#include "sdof/cli.hpp"

using namespace sdof;

namespace {

std::vector<double> grid(int points) { return SnrGrid{1e4, 1e12, points}.values(); }

void leakage(benchmark::State& state, Execution execution) {
  const int trials = static_cast<int>(state.range(0));
  const auto p_bar = grid(33);
  for (auto _ : state) {
    benchmark::DoNotOptimize(leakage_grid(2, 6, 1.5, p_bar, trials, 1, execution));
  }
  state.SetItemsProcessed(state.iterations() * trials * static_cast<long>(p_bar.size()));
}

void rate_curve(benchmark::State& state, Execution execution) {
  const auto spec = cli::generate_random_channel(6, 5, 5, 3, 1, 1e8);
  const auto pc = reduce_to_parallel(spec);
  const auto scheme = synthesize(pc, spec.p_bar, spec.n_e, {0, 2, 2}, PrivacyMode::no_privacy);
  const auto p_bar = grid(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(achievable_rate_curve(scheme, pc, p_bar, execution));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(p_bar.size()));
}

}  // namespace

BENCHMARK_CAPTURE(leakage, serial, Execution::serial)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(leakage, parallel, Execution::parallel)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(rate_curve, serial, Execution::serial)->Arg(64)->Arg(4096)->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(rate_curve, parallel, Execution::parallel)->Arg(64)->Arg(4096)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
