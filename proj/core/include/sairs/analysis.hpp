#ifndef SAIRS_ANALYSIS_HPP
#define SAIRS_ANALYSIS_HPP

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "sairs/ensemble.hpp"
#include "sairs/integrator.hpp"
#include "sairs/thresholds.hpp"

namespace sairs {

enum class Compartment { S = 0, A = 1, I = 2, R = 3 };

const char* compartment_name(Compartment c);

/** Left-rectangle time average (1 / (t_end - t0)) * sum x_k dt over all steps. */
double time_average(const Trajectory& traj, Compartment c);

/** Ensemble-mean time averages versus the long-run persistence bounds.
 *  satisfied[k] is true only for a strict excess over the bound. */
struct PersistenceReport {
  Vec4 time_averages{};            ///< ensemble mean of per-trajectory averages
  PersistenceBounds bounds;
  std::array<bool, 4> satisfied{};
  double horizon = 0;
  std::size_t n_traj = 0;
  bool all_satisfied() const;
};

/** Requires r0s > 1 for the supplied parameters (throws std::domain_error
 *  otherwise, since the bounds are undefined). */
PersistenceReport persistence_check(const EnsembleSummary& ens, const ModelParams& p);

/** Least-squares decay diagnostics of the infected pressure A + I. */
struct ExtinctionReport {
  double log_slope = 0;           ///< OLS slope of ln(A + I) over the fit window
  bool slope_defined = false;     ///< false when fewer than two positive samples
  bool truncated_at_zero = false; ///< A + I reached zero inside the window
  double terminal_infected = 0;   ///< A + I at the final node
  double s_terminal = 0;          ///< S at the final node
  double extinction_index = 0;    ///< model-level predictor, negative => extinction
};

/** Fits ln(A + I) over grid nodes with fit_t0 <= t <= fit_t1.  If A + I hits
 *  zero inside the window the fit uses only the preceding samples and the
 *  report is flagged truncated_at_zero. */
ExtinctionReport extinction_check(const Trajectory& traj, const ModelParams& p,
                                  double fit_t0, double fit_t1);

/** Aggregate verdict over many single-trajectory extinction reports.
 *  A trajectory counts as decaying if its fitted slope is <= 0, or if the
 *  infected pressure hit exactly zero before a slope could be fitted. */
struct ExtinctionEnsembleSummary {
  std::size_t n_traj = 0;
  std::size_t n_decaying = 0;        ///< slope <= 0 (or hit zero)
  std::size_t n_terminal_below = 0;  ///< terminal A + I < threshold
  double terminal_threshold = 1;
  double mean_terminal_s = 0;
};

ExtinctionEnsembleSummary summarize_extinction(std::span<const ExtinctionReport> reports,
                                               double terminal_threshold);

/** Equal-width histogram of one compartment after a burn-in period. */
struct Histogram {
  Compartment component = Compartment::I;
  std::vector<double> edges;   ///< n_bins + 1 ascending edges
  std::vector<double> masses;  ///< n_bins masses summing to one
  double burn_in = 0;
  std::size_t n_samples = 0;
  bool degenerate = false;     ///< all retained samples equal; single unit bin
};

/** Bins the samples at grid nodes with t >= t0 + burn_in over [min, max] of
 *  the retained values (max falls in the last bin).  Throws
 *  std::invalid_argument when the burn-in leaves no samples or n_bins == 0. */
Histogram stationary_histogram(const Trajectory& traj, double burn_in,
                               std::size_t n_bins, Compartment c);

/** Total variation distance after conservative rebinning onto the union of
 *  both edge sets: 0 for identical mass placement, 1 for disjoint supports.
 *  Throws std::domain_error when the components differ. */
double histogram_distance(const Histogram& a, const Histogram& b);

}  // namespace sairs

#endif
