#include "sairs/config.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

namespace sairs {

namespace {

using nlohmann::json;

std::string join(const std::string& path, const char* key) {
  return path.empty() ? std::string(key) : path + "." + key;
}

void require_object(const json& j, const std::string& path) {
  if (!j.is_object())
    throw ConfigError(path + ": expected an object");
}

void check_keys(const json& j, const std::string& path,
                std::initializer_list<const char*> allowed) {
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* k : allowed)
      if (item.key() == k) {
        known = true;
        break;
      }
    if (!known)
      throw ConfigError("unknown key: " + join(path, item.key().c_str()));
  }
}

double get_number(const json& obj, const char* key, const std::string& path) {
  const json& v = obj.at(key);
  if (!v.is_number())
    throw ConfigError(join(path, key) + ": expected a number");
  return v.get<double>();
}

double get_number(const json& obj, const char* key, const std::string& path,
                  double fallback) {
  if (!obj.contains(key)) return fallback;
  return get_number(obj, key, path);
}

double require_number(const json& obj, const char* key, const std::string& path) {
  if (!obj.contains(key))
    throw ConfigError("missing required key: " + join(path, key));
  return get_number(obj, key, path);
}

std::uint64_t get_uint(const json& obj, const char* key, const std::string& path,
                       std::uint64_t fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_unsigned())
    throw ConfigError(join(path, key) + ": expected a non-negative integer");
  return v.get<std::uint64_t>();
}

std::string get_string(const json& obj, const char* key, const std::string& path,
                       const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_string())
    throw ConfigError(join(path, key) + ": expected a string");
  return v.get<std::string>();
}

ModelParams parse_model(const json& j) {
  require_object(j, "model");
  check_keys(j, "model",
             {"lambda", "beta_a", "beta_i", "b", "mu", "gamma", "delta_a",
              "delta_i", "alpha", "d", "sigma"});
  ModelParams p;
  p.lambda = require_number(j, "lambda", "model");
  p.beta_a = require_number(j, "beta_a", "model");
  p.beta_i = require_number(j, "beta_i", "model");
  p.b = require_number(j, "b", "model");
  p.mu = require_number(j, "mu", "model");
  p.gamma = require_number(j, "gamma", "model");
  p.delta_a = require_number(j, "delta_a", "model");
  p.delta_i = require_number(j, "delta_i", "model");
  p.alpha = require_number(j, "alpha", "model");
  p.d = require_number(j, "d", "model");
  if (!j.contains("sigma"))
    throw ConfigError("missing required key: model.sigma");
  const json& sig = j.at("sigma");
  if (!sig.is_array() || sig.size() != 4)
    throw ConfigError("model.sigma: expected an array of four numbers");
  for (std::size_t k = 0; k < 4; ++k) {
    if (!sig[k].is_number())
      throw ConfigError("model.sigma: expected an array of four numbers");
    p.sigma[k] = sig[k].get<double>();
  }
  return p;
}

State parse_init(const json& j) {
  require_object(j, "init");
  check_keys(j, "init", {"S", "A", "I", "R"});
  State x;
  x.s = require_number(j, "S", "init");
  x.a = require_number(j, "A", "init");
  x.i = require_number(j, "I", "init");
  x.r = require_number(j, "R", "init");
  return x;
}

TimeGrid parse_grid(const json& j) {
  require_object(j, "grid");
  check_keys(j, "grid", {"t0", "t_end", "dt"});
  TimeGrid g;
  g.t0 = get_number(j, "t0", "grid", 0.0);
  g.t_end = require_number(j, "t_end", "grid");
  g.dt = get_number(j, "dt", "grid", 0.002);
  return g;
}

EnsembleConfig parse_ensemble(const json& j) {
  require_object(j, "ensemble");
  check_keys(j, "ensemble", {"n_traj", "master_seed", "n_threads"});
  EnsembleConfig e;
  e.n_traj = static_cast<std::size_t>(get_uint(j, "n_traj", "ensemble", 100));
  if (e.n_traj == 0) throw ConfigError("ensemble.n_traj: must be >= 1");
  e.master_seed = get_uint(j, "master_seed", "ensemble", 1);
  e.n_threads = static_cast<unsigned>(get_uint(j, "n_threads", "ensemble", 0));
  return e;
}

AnalysisConfig parse_analysis(const json& j) {
  require_object(j, "analysis");
  check_keys(j, "analysis", {"burn_in", "n_bins", "fit_window", "histogram_component"});
  AnalysisConfig a;
  if (j.contains("burn_in")) {
    a.burn_in = get_number(j, "burn_in", "analysis");
    if (!(*a.burn_in >= 0)) throw ConfigError("analysis.burn_in: must be >= 0");
  }
  a.n_bins = static_cast<std::size_t>(get_uint(j, "n_bins", "analysis", 50));
  if (a.n_bins == 0) throw ConfigError("analysis.n_bins: must be >= 1");
  if (j.contains("fit_window")) {
    const json& w = j.at("fit_window");
    if (!w.is_array() || w.size() != 2 || !w[0].is_number() || !w[1].is_number())
      throw ConfigError("analysis.fit_window: expected [start, end]");
    a.fit_window = std::make_pair(w[0].get<double>(), w[1].get<double>());
    if (!(a.fit_window->first < a.fit_window->second))
      throw ConfigError("analysis.fit_window: start must be < end");
  }
  const std::string comp = get_string(j, "histogram_component", "analysis", "I");
  try {
    a.histogram_component = compartment_from_name(comp);
  } catch (const std::exception&) {
    throw ConfigError("analysis.histogram_component: expected one of S, A, I, R");
  }
  return a;
}

ObjectiveWeights parse_weights(const json& j) {
  require_object(j, "control.weights");
  check_keys(j, "control.weights",
             {"p1", "p2", "p3", "q1", "q2", "k1", "k2", "k3", "k4"});
  ObjectiveWeights w;
  w.p1 = get_number(j, "p1", "control.weights", 0.0);
  w.p2 = get_number(j, "p2", "control.weights", 0.0);
  w.p3 = get_number(j, "p3", "control.weights", 0.0);
  w.q1 = get_number(j, "q1", "control.weights", 1.0);
  w.q2 = get_number(j, "q2", "control.weights", 1.0);
  w.k1 = get_number(j, "k1", "control.weights", 0.0);
  w.k2 = get_number(j, "k2", "control.weights", 0.0);
  w.k3 = get_number(j, "k3", "control.weights", 0.0);
  w.k4 = get_number(j, "k4", "control.weights", 0.0);
  return w;
}

SweepConfig parse_sweep(const json& j) {
  require_object(j, "control.sweep");
  check_keys(j, "control.sweep",
             {"max_iter", "tol", "omega", "mode", "forward", "forward_seed"});
  SweepConfig s;
  s.max_iter = static_cast<int>(get_uint(j, "max_iter", "control.sweep", 100));
  s.tol = get_number(j, "tol", "control.sweep", 1e-4);
  s.omega = get_number(j, "omega", "control.sweep", 0.5);
  const std::string mode = get_string(j, "mode", "control.sweep", "hamiltonian");
  if (mode == "hamiltonian")
    s.mode = ProjectionMode::hamiltonian;
  else if (mode == "paper")
    s.mode = ProjectionMode::paper;
  else
    throw ConfigError("control.sweep.mode: expected 'hamiltonian' or 'paper'");
  const std::string fwd = get_string(j, "forward", "control.sweep", "deterministic");
  if (fwd == "deterministic")
    s.stochastic_nominal = false;
  else if (fwd == "frozen_noise")
    s.stochastic_nominal = true;
  else
    throw ConfigError("control.sweep.forward: expected 'deterministic' or 'frozen_noise'");
  s.nominal_seed = get_uint(j, "forward_seed", "control.sweep", 0);
  return s;
}

ControlConfig parse_control(const json& j) {
  require_object(j, "control");
  check_keys(j, "control", {"weights", "sweep"});
  ControlConfig c;
  if (j.contains("weights")) c.weights = parse_weights(j.at("weights"));
  if (j.contains("sweep")) c.sweep = parse_sweep(j.at("sweep"));
  return c;
}

}  // namespace

Compartment compartment_from_name(const std::string& name) {
  if (name == "S") return Compartment::S;
  if (name == "A") return Compartment::A;
  if (name == "I") return Compartment::I;
  if (name == "R") return Compartment::R;
  throw std::invalid_argument("compartment name must be one of S, A, I, R");
}

double RunConfig::burn_in() const {
  if (analysis.burn_in) return *analysis.burn_in;
  return 0.2 * (grid.t_end - grid.t0);
}

std::pair<double, double> RunConfig::fit_window() const {
  if (analysis.fit_window) return *analysis.fit_window;
  return {grid.t0 + 0.5 * (grid.t_end - grid.t0), grid.t_end};
}

void RunConfig::validate() const {
  try {
    model.validate();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("model: ") + e.what());
  }
  try {
    init.validate();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("init: ") + e.what());
  }
  try {
    grid.validate();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("grid: ") + e.what());
  }
  try {
    control.weights.validate();
    control.sweep.validate();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("control: ") + e.what());
  }
  if (analysis.burn_in && *analysis.burn_in >= grid.t_end - grid.t0)
    throw ConfigError("analysis.burn_in: must be smaller than the horizon");
}

RunConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  require_object(j, "");
  check_keys(j, "",
             {"model", "init", "grid", "ensemble", "analysis", "control",
              "output_dir"});
  for (const char* required : {"model", "init", "grid"})
    if (!j.contains(required))
      throw ConfigError(std::string("missing required key: ") + required);

  RunConfig cfg;
  cfg.model = parse_model(j.at("model"));
  cfg.init = parse_init(j.at("init"));
  cfg.grid = parse_grid(j.at("grid"));
  if (j.contains("ensemble")) cfg.ensemble = parse_ensemble(j.at("ensemble"));
  if (j.contains("analysis")) cfg.analysis = parse_analysis(j.at("analysis"));
  if (j.contains("control")) cfg.control = parse_control(j.at("control"));
  cfg.output_dir = get_string(j, "output_dir", "", "out");
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError("cannot open config file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace sairs
