#ifndef SAIRS_IO_HPP
#define SAIRS_IO_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>

#include "sairs/analysis.hpp"
#include "sairs/control.hpp"
#include "sairs/ensemble.hpp"
#include "sairs/integrator.hpp"
#include "sairs/thresholds.hpp"

namespace sairs {

/** Shortest decimal string that round-trips the exact double value; output is
 *  a pure function of the bits, so files rewritten from equal data are
 *  byte-identical. */
std::string format_double(double v);

/** Header t,S,A,I,R (plus ,u1,u2 when the path carries controls), one row per
 *  grid node.  Controls are step functions; the final row repeats the last
 *  control so every row has the full column set. */
std::string trajectory_csv(const Trajectory& traj);

/** Header t,mean_*,q05_*,q50_*,q95_* over S,A,I,R; one row per recorded node. */
std::string ensemble_csv(const EnsembleSummary& ens);

/** Header t,u1,u2; one row per step, stamped with the step's left endpoint. */
std::string control_csv(const ControlGrid& controls);

/** Side-by-side ensemble means: t, then mean S,A,I,R without and with
 *  controls.  Both summaries must be recorded on identical node times. */
std::string comparison_csv(const EnsembleSummary& uncontrolled,
                           const EnsembleSummary& controlled);

/** Header bin_lo,bin_hi,mass; one row per bin. */
std::string histogram_csv(const Histogram& hist);

std::string thresholds_json(const ThresholdReport& rep);
std::string persistence_json(const PersistenceReport& rep);
std::string extinction_json(std::span<const ExtinctionReport> reports,
                            const ExtinctionEnsembleSummary& summary);
std::string stationary_json(const Histogram& a, const Histogram& b,
                            std::uint64_t seed_a, std::uint64_t seed_b,
                            double tv_distance);
std::string sweep_json(const SweepReport& rep, const SweepConfig& cfg,
                       double uncontrolled_objective, double controlled_objective);

/** Writes content to path, creating parent directories; throws
 *  std::runtime_error on I/O failure after removing the partial file. */
void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace sairs

#endif
