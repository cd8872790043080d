#include "sairs/io.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>
#include <system_error>

#include <json.hpp>

namespace sairs {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  if (res.ec != std::errc())
    throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, res.ptr);
}

namespace {

void append_state_row(std::string& out, double t, const State& x) {
  out += format_double(t);
  for (std::size_t c = 0; c < 4; ++c) {
    out += ',';
    out += format_double(x[c]);
  }
}

}  // namespace

std::string trajectory_csv(const Trajectory& traj) {
  const bool with_controls = !traj.controls.empty();
  std::string out = with_controls ? "t,S,A,I,R,u1,u2\n" : "t,S,A,I,R\n";
  const std::size_t n = traj.grid.n_steps();
  for (std::size_t k = 0; k <= n; ++k) {
    append_state_row(out, traj.grid.time_at(k), traj.states[k]);
    if (with_controls) {
      const ControlValue& u = traj.controls[k < n ? k : n - 1];
      out += ',';
      out += format_double(u.u1);
      out += ',';
      out += format_double(u.u2);
    }
    out += '\n';
  }
  return out;
}

std::string ensemble_csv(const EnsembleSummary& ens) {
  std::string out =
      "t,mean_S,mean_A,mean_I,mean_R,"
      "q05_S,q05_A,q05_I,q05_R,"
      "q50_S,q50_A,q50_I,q50_R,"
      "q95_S,q95_A,q95_I,q95_R\n";
  for (std::size_t row = 0; row < ens.times.size(); ++row) {
    out += format_double(ens.times[row]);
    for (const auto* block : {&ens.mean, &ens.q05, &ens.q50, &ens.q95}) {
      for (std::size_t c = 0; c < 4; ++c) {
        out += ',';
        out += format_double((*block)[row][c]);
      }
    }
    out += '\n';
  }
  return out;
}

std::string control_csv(const ControlGrid& controls) {
  std::string out = "t,u1,u2\n";
  for (std::size_t k = 0; k < controls.u1.size(); ++k) {
    out += format_double(controls.grid.time_at(k));
    out += ',';
    out += format_double(controls.u1[k]);
    out += ',';
    out += format_double(controls.u2[k]);
    out += '\n';
  }
  return out;
}

std::string comparison_csv(const EnsembleSummary& uncontrolled,
                           const EnsembleSummary& controlled) {
  if (uncontrolled.times != controlled.times)
    throw std::invalid_argument("comparison_csv: summaries use different node times");
  std::string out =
      "t,mean_S_uncontrolled,mean_A_uncontrolled,mean_I_uncontrolled,"
      "mean_R_uncontrolled,mean_S_controlled,mean_A_controlled,"
      "mean_I_controlled,mean_R_controlled\n";
  for (std::size_t row = 0; row < uncontrolled.times.size(); ++row) {
    out += format_double(uncontrolled.times[row]);
    for (std::size_t c = 0; c < 4; ++c) {
      out += ',';
      out += format_double(uncontrolled.mean[row][c]);
    }
    for (std::size_t c = 0; c < 4; ++c) {
      out += ',';
      out += format_double(controlled.mean[row][c]);
    }
    out += '\n';
  }
  return out;
}

std::string histogram_csv(const Histogram& hist) {
  std::string out = "bin_lo,bin_hi,mass\n";
  for (std::size_t k = 0; k < hist.masses.size(); ++k) {
    out += format_double(hist.edges[k]);
    out += ',';
    out += format_double(hist.edges[k + 1]);
    out += ',';
    out += format_double(hist.masses[k]);
    out += '\n';
  }
  return out;
}

std::string thresholds_json(const ThresholdReport& rep) {
  ordered_json j;
  j["m_const"] = rep.m_const;
  j["r0s"] = rep.r0s;
  j["beta_min"] = rep.beta_min;
  j["beta_max"] = rep.beta_max;
  j["h_const"] = rep.h_const;
  j["extinction_index"] = rep.extinction_index;
  if (rep.persistence_bounds) {
    j["persistence_bounds"] = {{"S", rep.persistence_bounds->s},
                               {"A", rep.persistence_bounds->a},
                               {"I", rep.persistence_bounds->i},
                               {"R", rep.persistence_bounds->r}};
  } else {
    j["persistence_bounds"] = nullptr;
  }
  return j.dump(2) + "\n";
}

std::string persistence_json(const PersistenceReport& rep) {
  static const char* names[4] = {"S", "A", "I", "R"};
  ordered_json j;
  j["horizon"] = rep.horizon;
  j["n_traj"] = rep.n_traj;
  const double bounds[4] = {rep.bounds.s, rep.bounds.a, rep.bounds.i, rep.bounds.r};
  for (std::size_t c = 0; c < 4; ++c) {
    j["time_averages"][names[c]] = rep.time_averages[c];
    j["bounds"][names[c]] = bounds[c];
    j["satisfied"][names[c]] = rep.satisfied[c];
  }
  j["all_satisfied"] = rep.all_satisfied();
  return j.dump(2) + "\n";
}

std::string extinction_json(std::span<const ExtinctionReport> reports,
                            const ExtinctionEnsembleSummary& summary) {
  ordered_json j;
  j["n_traj"] = summary.n_traj;
  j["n_decaying"] = summary.n_decaying;
  j["n_terminal_below"] = summary.n_terminal_below;
  j["terminal_threshold"] = summary.terminal_threshold;
  j["mean_terminal_s"] = summary.mean_terminal_s;
  if (!reports.empty()) j["extinction_index"] = reports[0].extinction_index;
  j["trajectories"] = ordered_json::array();
  for (std::size_t k = 0; k < reports.size(); ++k) {
    const ExtinctionReport& r = reports[k];
    ordered_json row;
    row["index"] = k;
    row["log_slope"] = r.log_slope;
    row["slope_defined"] = r.slope_defined;
    row["truncated_at_zero"] = r.truncated_at_zero;
    row["terminal_infected"] = r.terminal_infected;
    row["s_terminal"] = r.s_terminal;
    j["trajectories"].push_back(std::move(row));
  }
  return j.dump(2) + "\n";
}

std::string stationary_json(const Histogram& a, const Histogram& b,
                            std::uint64_t seed_a, std::uint64_t seed_b,
                            double tv_distance) {
  ordered_json j;
  j["component"] = compartment_name(a.component);
  j["seeds"] = {seed_a, seed_b};
  j["burn_in"] = a.burn_in;
  j["n_bins"] = a.masses.size();
  j["n_samples"] = {a.n_samples, b.n_samples};
  j["degenerate"] = {a.degenerate, b.degenerate};
  j["tv_distance"] = tv_distance;
  return j.dump(2) + "\n";
}

std::string sweep_json(const SweepReport& rep, const SweepConfig& cfg,
                       double uncontrolled_objective, double controlled_objective) {
  ordered_json j;
  j["converged"] = rep.converged;
  j["iterations"] = rep.iterations;
  j["final_objective"] = rep.final_objective;
  j["tol"] = cfg.tol;
  j["omega"] = cfg.omega;
  j["max_iter"] = cfg.max_iter;
  j["mode"] = cfg.mode == ProjectionMode::hamiltonian ? "hamiltonian" : "paper";
  j["forward"] = cfg.stochastic_nominal ? "frozen_noise" : "deterministic";
  j["uncontrolled_objective"] = uncontrolled_objective;
  j["controlled_objective"] = controlled_objective;
  j["control_change_history"] = rep.control_change_history;
  j["objective_history"] = rep.objective_history;
  return j.dump(2) + "\n";
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) {
    out.close();
    std::error_code ec;
    std::filesystem::remove(path, ec);
    throw std::runtime_error("write failed: " + path.string());
  }
}

}  // namespace sairs
