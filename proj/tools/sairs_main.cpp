// Command line front end: thresholds, simulate, ensemble, stationary,
// control, and the packaged verification suite.  Exit codes: 0 success,
// 1 invalid configuration or arguments, 2 runtime failure, 3 verification
// failure.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sairs/analysis.hpp"
#include "sairs/config.hpp"
#include "sairs/control.hpp"
#include "sairs/ensemble.hpp"
#include "sairs/io.hpp"
#include "sairs/presets.hpp"
#include "sairs/thresholds.hpp"
#include "sairs/verify.hpp"

namespace fs = std::filesystem;
using namespace sairs;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitVerifyFailed = 3;

struct CommonArgs {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trajectories;
  std::optional<double> t_end;
  std::optional<double> dt;
  std::optional<std::string> out_dir;
  std::optional<std::string> mode;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool config_required) {
  auto* opt = cmd->add_option("--config", args.config_path,
                              "Path to a JSON run configuration");
  if (config_required) opt->required();
  cmd->add_option("--seed", args.seed, "Override ensemble.master_seed");
  cmd->add_option("--trajectories", args.trajectories, "Override ensemble.n_traj");
  cmd->add_option("--t-end", args.t_end, "Override grid.t_end");
  cmd->add_option("--dt", args.dt, "Override grid.dt");
  cmd->add_option("--out", args.out_dir, "Override output_dir");
  cmd->add_option("--mode", args.mode,
                  "Override control.sweep.mode (paper|hamiltonian)")
      ->check(CLI::IsMember({"paper", "hamiltonian"}));
}

RunConfig load_with_overrides(const CommonArgs& args) {
  RunConfig cfg = load_config(args.config_path);
  if (args.seed) cfg.ensemble.master_seed = *args.seed;
  if (args.trajectories) {
    if (*args.trajectories == 0) throw ConfigError("--trajectories: must be >= 1");
    cfg.ensemble.n_traj = *args.trajectories;
  }
  if (args.t_end) cfg.grid.t_end = *args.t_end;
  if (args.dt) cfg.grid.dt = *args.dt;
  if (args.out_dir) cfg.output_dir = *args.out_dir;
  if (args.mode)
    cfg.control.sweep.mode = (*args.mode == "paper") ? ProjectionMode::paper
                                                     : ProjectionMode::hamiltonian;
  cfg.validate();
  return cfg;
}

// Collects finished file contents first, then flushes them together; a failed
// or interrupted command therefore leaves no partial output behind.
class OutputSet {
 public:
  explicit OutputSet(fs::path dir) : dir_(std::move(dir)) {}

  void add(const std::string& name, std::string content) {
    pending_.emplace_back(dir_ / name, std::move(content));
  }

  void flush() {
    std::vector<fs::path> written;
    try {
      for (const auto& [path, content] : pending_) {
        write_file(path, content);
        written.push_back(path);
      }
    } catch (...) {
      for (const fs::path& p : written) {
        std::error_code ec;
        fs::remove(p, ec);
      }
      throw;
    }
    for (const auto& [path, content] : pending_)
      std::cout << "wrote " << path.string() << "\n";
    pending_.clear();
  }

 private:
  fs::path dir_;
  std::vector<std::pair<fs::path, std::string>> pending_;
};

EnsembleOptions ensemble_options(const RunConfig& cfg) {
  EnsembleOptions opts;
  opts.n_traj = cfg.ensemble.n_traj;
  opts.master_seed = cfg.ensemble.master_seed;
  opts.n_threads = cfg.ensemble.n_threads;
  return opts;
}

int cmd_thresholds(const RunConfig& cfg) {
  const ThresholdReport rep = compute_thresholds(cfg.model);
  OutputSet out(cfg.output_dir);
  out.add("thresholds_report.json", thresholds_json(rep));

  std::cout << "m_const=" << format_double(rep.m_const) << "\n"
            << "r0s=" << format_double(rep.r0s) << "\n"
            << "beta_min=" << format_double(rep.beta_min) << "\n"
            << "beta_max=" << format_double(rep.beta_max) << "\n"
            << "h_const=" << format_double(rep.h_const) << "\n"
            << "extinction_index=" << format_double(rep.extinction_index) << "\n";
  if (rep.persistence_bounds) {
    std::cout << "persistence_bounds.S=" << format_double(rep.persistence_bounds->s) << "\n"
              << "persistence_bounds.A=" << format_double(rep.persistence_bounds->a) << "\n"
              << "persistence_bounds.I=" << format_double(rep.persistence_bounds->i) << "\n"
              << "persistence_bounds.R=" << format_double(rep.persistence_bounds->r) << "\n";
  } else {
    std::cout << "persistence_bounds=none (r0s <= 1)\n";
  }
  out.flush();
  return kExitOk;
}

int cmd_simulate(const RunConfig& cfg) {
  NoiseStream noise(cfg.ensemble.master_seed, 0);
  const Trajectory traj = simulate_trajectory(cfg.init, cfg.model, cfg.grid, noise);
  OutputSet out(cfg.output_dir);
  out.add("trajectory.csv", trajectory_csv(traj));
  const State& x = traj.states.back();
  std::cout << "simulated one path: seed " << cfg.ensemble.master_seed
            << ", substream 0, " << cfg.grid.n_steps() << " steps, "
            << traj.truncation_events << " truncations\n"
            << "terminal state: S=" << format_double(x.s)
            << " A=" << format_double(x.a) << " I=" << format_double(x.i)
            << " R=" << format_double(x.r) << "\n";
  out.flush();
  return kExitOk;
}

int cmd_ensemble(const RunConfig& cfg) {
  const EnsembleSummary ens =
      run_ensemble(cfg.init, cfg.model, cfg.grid, ensemble_options(cfg));
  OutputSet out(cfg.output_dir);
  out.add("ensemble_summary.csv", ensemble_csv(ens));

  const ThresholdReport thr = compute_thresholds(cfg.model);
  std::cout << "ensemble: " << ens.n_traj << " trajectories, "
            << ens.total_truncations() << " truncations over "
            << ens.total_steps() << " steps\n";

  if (thr.r0s > 1.0) {
    const PersistenceReport rep = persistence_check(ens, cfg.model);
    out.add("persistence_report.json", persistence_json(rep));
    std::cout << "persistence: r0s=" << format_double(thr.r0s)
              << ", all bounds " << (rep.all_satisfied() ? "exceeded" : "NOT exceeded")
              << "\n";
  }
  if (thr.extinction_index < 0) {
    const auto [fit_lo, fit_hi] = cfg.fit_window();
    std::vector<ExtinctionReport> reports;
    reports.reserve(ens.n_traj);
    for (std::size_t j = 0; j < ens.n_traj; ++j) {
      NoiseStream noise(cfg.ensemble.master_seed, j);
      const Trajectory traj = simulate_trajectory(cfg.init, cfg.model, cfg.grid, noise);
      reports.push_back(extinction_check(traj, cfg.model, fit_lo, fit_hi));
    }
    const ExtinctionEnsembleSummary sum = summarize_extinction(reports, 1.0);
    out.add("extinction_report.json", extinction_json(reports, sum));
    std::cout << "extinction: index=" << format_double(thr.extinction_index)
              << ", decaying " << sum.n_decaying << "/" << sum.n_traj
              << ", terminal below " << format_double(sum.terminal_threshold)
              << " in " << sum.n_terminal_below << "/" << sum.n_traj << "\n";
  }
  out.flush();
  return kExitOk;
}

int cmd_stationary(const RunConfig& cfg) {
  const std::uint64_t seed_a = cfg.ensemble.master_seed;
  const std::uint64_t seed_b = seed_a + 1;
  NoiseStream na(seed_a, 0);
  NoiseStream nb(seed_b, 0);
  const Trajectory ta = simulate_trajectory(cfg.init, cfg.model, cfg.grid, na);
  const Trajectory tb = simulate_trajectory(cfg.init, cfg.model, cfg.grid, nb);
  const Histogram ha = stationary_histogram(ta, cfg.burn_in(), cfg.analysis.n_bins,
                                            cfg.analysis.histogram_component);
  const Histogram hb = stationary_histogram(tb, cfg.burn_in(), cfg.analysis.n_bins,
                                            cfg.analysis.histogram_component);
  const double tv = histogram_distance(ha, hb);

  OutputSet out(cfg.output_dir);
  out.add("histogram_seed_a.csv", histogram_csv(ha));
  out.add("histogram_seed_b.csv", histogram_csv(hb));
  out.add("stationary_report.json", stationary_json(ha, hb, seed_a, seed_b, tv));
  std::cout << "stationary: component " << compartment_name(ha.component)
            << ", seeds " << seed_a << "/" << seed_b << ", burn-in "
            << format_double(cfg.burn_in()) << ", tv_distance="
            << format_double(tv) << "\n";
  out.flush();
  return kExitOk;
}

int cmd_control(const RunConfig& cfg) {
  const auto [u, rep] = forward_backward_sweep(cfg.init, cfg.model,
                                               cfg.control.weights, cfg.grid,
                                               cfg.control.sweep);
  const EnsembleOptions opts = ensemble_options(cfg);
  const std::vector<ControlValue> uv = u.values();
  const EnsembleSummary unc = run_ensemble(cfg.init, cfg.model, cfg.grid, opts);
  const EnsembleSummary ctl = run_ensemble(cfg.init, cfg.model, cfg.grid, opts, uv);

  const ControlGrid zeros = ControlGrid::zeros(cfg.grid);
  const ObjectiveEstimate j_unc =
      objective_estimate(cfg.init, cfg.model, cfg.control.weights, zeros,
                         cfg.ensemble.n_traj, cfg.ensemble.master_seed);
  const ObjectiveEstimate j_ctl =
      objective_estimate(cfg.init, cfg.model, cfg.control.weights, u,
                         cfg.ensemble.n_traj, cfg.ensemble.master_seed);

  OutputSet out(cfg.output_dir);
  out.add("control.csv", control_csv(u));
  out.add("sweep_report.json", sweep_json(rep, cfg.control.sweep, j_unc.value, j_ctl.value));
  out.add("comparison.csv", comparison_csv(unc, ctl));

  std::cout << "sweep: " << (rep.converged ? "converged" : "did NOT converge")
            << " after " << rep.iterations << " iterations, final objective "
            << format_double(rep.final_objective) << "\n"
            << "expected cost (same noise): uncontrolled "
            << format_double(j_unc.value) << " +/- " << format_double(j_unc.std_error)
            << ", controlled " << format_double(j_ctl.value) << " +/- "
            << format_double(j_ctl.std_error) << "\n"
            << "ensemble mean at t_end: A " << format_double(unc.mean.back()[1])
            << " -> " << format_double(ctl.mean.back()[1]) << ", I "
            << format_double(unc.mean.back()[2]) << " -> "
            << format_double(ctl.mean.back()[2]) << "\n";
  out.flush();
  return kExitOk;
}

int cmd_verify(const std::optional<std::string>& out_dir) {
  const std::vector<CriterionResult> results = run_verification();
  bool all_passed = true;
  for (const CriterionResult& r : results) {
    all_passed = all_passed && r.passed;
    std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << r.id << " " << r.name
              << ": " << r.detail << "\n";
  }
  OutputSet out(out_dir.value_or("out"));
  out.add("verify_report.json", verify_json(results));
  out.flush();
  std::cout << (all_passed ? "verification passed" : "verification FAILED") << "\n";
  return all_passed ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulation and intervention planning for a four-compartment "
               "stochastic epidemic model"};
  app.require_subcommand(1);

  CommonArgs args;
  CLI::App* thresholds = app.add_subcommand("thresholds", "Report threshold quantities");
  CLI::App* simulate = app.add_subcommand("simulate", "Integrate one sample path");
  CLI::App* ensemble = app.add_subcommand("ensemble", "Run an ensemble and summarize it");
  CLI::App* stationary = app.add_subcommand("stationary", "Compare long-run histograms across seeds");
  CLI::App* control = app.add_subcommand("control", "Optimize an intervention schedule");
  CLI::App* verify = app.add_subcommand("verify", "Run the packaged verification suite");
  for (CLI::App* cmd : {thresholds, simulate, ensemble, stationary, control})
    add_common(cmd, args, true);
  add_common(verify, args, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (verify->parsed()) return cmd_verify(args.out_dir);
    const RunConfig cfg = load_with_overrides(args);
    if (thresholds->parsed()) return cmd_thresholds(cfg);
    if (simulate->parsed()) return cmd_simulate(cfg);
    if (ensemble->parsed()) return cmd_ensemble(cfg);
    if (stationary->parsed()) return cmd_stationary(cfg);
    if (control->parsed()) return cmd_control(cfg);
    std::cerr << "error: no command selected\n";
    return kExitInvalid;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::domain_error& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << "\n";
    return kExitRuntime;
  }
}
