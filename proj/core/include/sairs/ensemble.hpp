#ifndef SAIRS_ENSEMBLE_HPP
#define SAIRS_ENSEMBLE_HPP

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sairs/integrator.hpp"

namespace sairs {

/** Raised when a member trajectory fails; carries the trajectory index. */
class EnsembleError : public std::runtime_error {
 public:
  EnsembleError(std::size_t trajectory_index, const std::string& what)
      : std::runtime_error("trajectory " + std::to_string(trajectory_index) +
                           ": " + what),
        index_(trajectory_index) {}
  std::size_t trajectory_index() const { return index_; }

 private:
  std::size_t index_;
};

struct EnsembleOptions {
  std::size_t n_traj = 100;
  std::uint64_t master_seed = 1;
  unsigned n_threads = 0;         ///< 0: one per hardware thread
  std::size_t summary_stride = 0; ///< record every k-th node; 0: aim for ~2000 rows
};

/** Cross-sectional statistics over an ensemble of sample paths.
 *
 * Per-node vectors are recorded on a thinned subset of the grid (node 0 and
 * the final node always included).  Per-trajectory vectors are indexed by
 * trajectory number.  All reductions run in trajectory-index order, so the
 * summary is identical for every thread count and scheduling. */
struct EnsembleSummary {
  TimeGrid grid;
  std::size_t n_traj = 0;
  std::uint64_t master_seed = 0;

  std::vector<double> times;  ///< recorded node times
  std::vector<Vec4> mean;     ///< per recorded node
  std::vector<Vec4> q05;      ///< 5% quantile per recorded node
  std::vector<Vec4> q50;      ///< median per recorded node
  std::vector<Vec4> q95;      ///< 95% quantile per recorded node

  std::vector<State> terminal;                 ///< state at t_end, per trajectory
  std::vector<Vec4> time_avg;                  ///< left-rectangle time average, per trajectory
  std::vector<std::size_t> truncation_events;  ///< per trajectory

  std::size_t total_truncations() const;
  std::size_t total_steps() const { return n_traj * grid.n_steps(); }
};

/** Runs trajectories 0 .. n_traj-1, each on its own noise substream of
 *  master_seed, optionally under a shared per-step control sequence.
 *  Member failures surface as EnsembleError for the lowest failing index. */
EnsembleSummary run_ensemble(const State& init, const ModelParams& p,
                             const TimeGrid& grid, const EnsembleOptions& opts,
                             std::span<const ControlValue> controls = {});

/** Linear-interpolation quantile of an unsorted sample (matches the common
 *  statistical convention; exposed for reuse and tests). */
double quantile(std::vector<double> values, double prob);

}  // namespace sairs

#endif
