#ifndef SAIRS_CONFIG_HPP
#define SAIRS_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "sairs/analysis.hpp"
#include "sairs/control.hpp"
#include "sairs/model.hpp"

namespace sairs {

/** Raised on malformed run configurations; the message names the key path. */
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EnsembleConfig {
  std::size_t n_traj = 100;
  std::uint64_t master_seed = 1;
  unsigned n_threads = 0;  ///< 0: one per hardware thread

  friend bool operator==(const EnsembleConfig&, const EnsembleConfig&) = default;
};

struct AnalysisConfig {
  std::optional<double> burn_in;  ///< default: 20% of the horizon
  std::size_t n_bins = 50;
  std::optional<std::pair<double, double>> fit_window;  ///< default: last half
  Compartment histogram_component = Compartment::I;

  friend bool operator==(const AnalysisConfig&, const AnalysisConfig&) = default;
};

struct ControlConfig {
  ObjectiveWeights weights;
  SweepConfig sweep;

  friend bool operator==(const ControlConfig&, const ControlConfig&) = default;
};

/** Complete description of one run: model, initial state, grid, and the
 *  per-command sections, each optional in the JSON with the defaults below. */
struct RunConfig {
  ModelParams model;
  State init;
  TimeGrid grid;
  EnsembleConfig ensemble;
  AnalysisConfig analysis;
  ControlConfig control;
  std::string output_dir = "out";

  /** Analysis burn-in, explicit or 20% of (t_end - t0). */
  double burn_in() const;

  /** Slope-fit window, explicit or the last half of the horizon. */
  std::pair<double, double> fit_window() const;

  /** Validates every section; throws ConfigError naming the section. */
  void validate() const;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/** Parses a JSON document.  `model`, `init` and `grid.t_end` are required;
 *  everything else falls back to defaults.  Unknown keys anywhere are
 *  rejected, and every error message carries the offending key path. */
RunConfig parse_config(const std::string& json_text);

/** parse_config over the contents of `path`. */
RunConfig load_config(const std::filesystem::path& path);

Compartment compartment_from_name(const std::string& name);

}  // namespace sairs

#endif
