#include <benchmark/benchmark.h>

#include <sairs/analysis.hpp>
#include <sairs/ensemble.hpp>
#include <sairs/integrator.hpp>
#include <sairs/noise.hpp>
#include <sairs/presets.hpp>
#include <sairs/thresholds.hpp>

using namespace sairs;

namespace {

const RunConfig& baseline() {
  static const RunConfig cfg = presets::example1();
  return cfg;
}

void BM_drift(benchmark::State& state) {
  const ModelParams p = baseline().model;
  const State x = baseline().init;
  for (auto _ : state) {
    benchmark::DoNotOptimize(drift(x, p));
  }
}
BENCHMARK(BM_drift);

void BM_normal4(benchmark::State& state) {
  NoiseStream stream(1, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(stream.normal4());
  }
}
BENCHMARK(BM_normal4);

void BM_milstein_step(benchmark::State& state) {
  const ModelParams p = baseline().model;
  NoiseStream stream(1, 0);
  State x = baseline().init;
  for (auto _ : state) {
    x = milstein_step(x, p, 0.002, stream.normal4()).state;
    benchmark::DoNotOptimize(x);
  }
}
BENCHMARK(BM_milstein_step);

void BM_rk4_step(benchmark::State& state) {
  const ModelParams p = baseline().model;
  State x = baseline().init;
  for (auto _ : state) {
    x = rk4_step(x, p, 0.002);
    benchmark::DoNotOptimize(x);
  }
}
BENCHMARK(BM_rk4_step);

void BM_reproduction_index(benchmark::State& state) {
  const ModelParams p = baseline().model;
  for (auto _ : state) {
    benchmark::DoNotOptimize(compute_r0s(p));
  }
}
BENCHMARK(BM_reproduction_index);

void BM_trajectory_1k_steps(benchmark::State& state) {
  const RunConfig& cfg = baseline();
  const TimeGrid grid{0.0, 2.0, 0.002};
  std::uint64_t seed = 0;
  for (auto _ : state) {
    NoiseStream stream(42, seed++);
    benchmark::DoNotOptimize(
        simulate_trajectory(cfg.init, cfg.model, grid, stream));
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) *
                          static_cast<int64_t>(grid.n_steps()));
}
BENCHMARK(BM_trajectory_1k_steps);

void BM_histogram(benchmark::State& state) {
  const RunConfig& cfg = baseline();
  const TimeGrid grid{0.0, 50.0, 0.002};
  NoiseStream stream(42, 0);
  const Trajectory traj = simulate_trajectory(cfg.init, cfg.model, grid, stream);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        stationary_histogram(traj, 10.0, 50, Compartment::I));
  }
}
BENCHMARK(BM_histogram);

void BM_ensemble_8(benchmark::State& state) {
  const RunConfig& cfg = baseline();
  const TimeGrid grid{0.0, 2.0, 0.002};
  EnsembleOptions opts;
  opts.n_traj = 8;
  opts.master_seed = 42;
  opts.n_threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_ensemble(cfg.init, cfg.model, grid, opts));
  }
}
BENCHMARK(BM_ensemble_8)->Arg(1)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
