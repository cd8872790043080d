#include "sairs/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <optional>
#include <thread>

namespace sairs {

std::size_t EnsembleSummary::total_truncations() const {
  std::size_t n = 0;
  for (std::size_t c : truncation_events) n += c;
  return n;
}

double quantile(std::vector<double> values, double prob) {
  if (values.empty()) throw std::invalid_argument("quantile: empty sample");
  if (!(prob >= 0 && prob <= 1))
    throw std::invalid_argument("quantile: prob must lie in [0, 1]");
  std::sort(values.begin(), values.end());
  const double h = prob * static_cast<double>(values.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(h);
  if (lo + 1 >= values.size()) return values.back();
  return values[lo] + (h - static_cast<double>(lo)) * (values[lo + 1] - values[lo]);
}

namespace {

std::vector<std::size_t> recorded_nodes(std::size_t n_steps, std::size_t stride) {
  if (stride == 0) stride = std::max<std::size_t>(1, n_steps / 2000);
  std::vector<std::size_t> nodes;
  for (std::size_t k = 0; k <= n_steps; k += stride) nodes.push_back(k);
  if (nodes.back() != n_steps) nodes.push_back(n_steps);
  return nodes;
}

}  // namespace

EnsembleSummary run_ensemble(const State& init, const ModelParams& p,
                             const TimeGrid& grid, const EnsembleOptions& opts,
                             std::span<const ControlValue> controls) {
  p.validate();
  init.validate();
  grid.validate();
  if (opts.n_traj == 0) throw std::invalid_argument("run_ensemble: n_traj must be >= 1");
  const std::size_t n_steps = grid.n_steps();
  if (!controls.empty() && controls.size() != n_steps)
    throw std::invalid_argument("run_ensemble: controls must be empty or one per step");
  for (const ControlValue& u : controls) u.validate();

  const std::vector<std::size_t> nodes = recorded_nodes(n_steps, opts.summary_stride);
  const std::size_t n_nodes = nodes.size();
  const std::size_t n_traj = opts.n_traj;

  // Per-trajectory result slots; workers write disjoint entries, the reduction
  // below walks them in index order, so the outcome is schedule independent.
  std::vector<Vec4> samples(n_nodes * n_traj);  // samples[node * n_traj + j]
  std::vector<State> terminal(n_traj);
  std::vector<Vec4> time_avg(n_traj);
  std::vector<std::size_t> truncations(n_traj, 0);
  std::optional<EnsembleError> first_error;
  std::mutex error_mutex;

  const double span_t = grid.t_end - grid.t0;
  auto worker = [&](std::size_t j) {
    NoiseStream noise(opts.master_seed, j);
    State x = init;
    Vec4 avg{};
    std::size_t clamped = 0;
    std::size_t next_node = 0;
    for (std::size_t k = 0; k < n_steps; ++k) {
      if (next_node < n_nodes && nodes[next_node] == k) {
        for (std::size_t c = 0; c < 4; ++c) samples[next_node * n_traj + j][c] = x[c];
        ++next_node;
      }
      for (std::size_t c = 0; c < 4; ++c) avg[c] += x[c] * grid.dt;
      const Vec4 z = noise.normal4();
      const ControlValue* u = controls.empty() ? nullptr : &controls[k];
      StepResult r = milstein_step(x, p, grid.dt, z, u);
      x = r.state;
      clamped += static_cast<std::size_t>(r.truncated);
    }
    for (std::size_t c = 0; c < 4; ++c) samples[(n_nodes - 1) * n_traj + j][c] = x[c];
    for (std::size_t c = 0; c < 4; ++c) avg[c] /= span_t;
    terminal[j] = x;
    time_avg[j] = avg;
    truncations[j] = clamped;
  };

  unsigned n_threads = opts.n_threads;
  if (n_threads == 0)
    n_threads = std::max(1u, std::thread::hardware_concurrency());
  n_threads = static_cast<unsigned>(
      std::min<std::size_t>(n_threads, n_traj));

  if (n_threads <= 1) {
    for (std::size_t j = 0; j < n_traj; ++j) {
      try {
        worker(j);
      } catch (const std::exception& e) {
        throw EnsembleError(j, e.what());
      }
    }
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) {
      pool.emplace_back([&, t]() {
        for (std::size_t j = t; j < n_traj; j += n_threads) {
          try {
            worker(j);
          } catch (const std::exception& e) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error || j < first_error->trajectory_index())
              first_error = EnsembleError(j, e.what());
            return;
          }
        }
      });
    }
    for (std::thread& t : pool) t.join();
    if (first_error) throw *first_error;
  }

  EnsembleSummary out;
  out.grid = grid;
  out.n_traj = n_traj;
  out.master_seed = opts.master_seed;
  out.times.reserve(n_nodes);
  for (std::size_t node : nodes) out.times.push_back(grid.time_at(node));
  out.mean.resize(n_nodes);
  out.q05.resize(n_nodes);
  out.q50.resize(n_nodes);
  out.q95.resize(n_nodes);

  std::vector<double> column(n_traj);
  for (std::size_t node = 0; node < n_nodes; ++node) {
    for (std::size_t c = 0; c < 4; ++c) {
      double sum = 0;
      for (std::size_t j = 0; j < n_traj; ++j) {
        column[j] = samples[node * n_traj + j][c];
        sum += column[j];
      }
      out.mean[node][c] = sum / static_cast<double>(n_traj);
      out.q05[node][c] = quantile(column, 0.05);
      out.q50[node][c] = quantile(column, 0.50);
      out.q95[node][c] = quantile(column, 0.95);
    }
  }
  out.terminal = std::move(terminal);
  out.time_avg = std::move(time_avg);
  out.truncation_events = std::move(truncations);
  return out;
}

}  // namespace sairs
