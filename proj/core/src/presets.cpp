#include "sairs/presets.hpp"

#include <stdexcept>

namespace sairs::presets {

namespace {

RunConfig base_persistent() {
  RunConfig cfg;
  cfg.model.lambda = 30;
  cfg.model.beta_a = 0.01;
  cfg.model.beta_i = 0.01;
  cfg.model.b = 0.2;
  cfg.model.mu = 2e-5;
  cfg.model.gamma = 0.5;
  cfg.model.delta_a = 0.2;
  cfg.model.delta_i = 0.2;
  cfg.model.alpha = 0.5;
  cfg.model.d = 0.0027;
  cfg.model.sigma = {0.05, 0.05, 0.05, 0.05};
  cfg.init = State{1500, 5, 6, 25};
  cfg.grid = TimeGrid{0, 500, 0.002};
  cfg.ensemble.master_seed = 42;
  return cfg;
}

}  // namespace

RunConfig example1() {
  RunConfig cfg = base_persistent();
  cfg.ensemble.n_traj = 200;
  return cfg;
}

RunConfig example2() {
  RunConfig cfg = base_persistent();
  cfg.model.d = 0.1;
  return cfg;
}

RunConfig example3() {
  RunConfig cfg = base_persistent();
  cfg.model.sigma = {0.02, 0.02, 0.02, 0.02};
  return cfg;
}

RunConfig example4() {
  RunConfig cfg;
  cfg.model.lambda = 12;
  cfg.model.beta_a = 5.0936e-7;
  cfg.model.beta_i = 5.0725e-7;
  cfg.model.b = 3.1124e-7;
  cfg.model.mu = 2e-4;
  cfg.model.gamma = 0.2;
  cfg.model.delta_a = 0.4722;
  cfg.model.delta_i = 0.9259;
  cfg.model.alpha = 0.01;
  cfg.model.d = 0.0027;
  cfg.model.sigma = {0.02, 0.7, 0.8, 0.3};
  cfg.init = State{627000, 500, 600, 250000};
  cfg.grid = TimeGrid{0, 200, 0.002};
  cfg.ensemble.n_traj = 100;
  cfg.ensemble.master_seed = 2;
  return cfg;
}

RunConfig example5() {
  RunConfig cfg;
  cfg.model.lambda = 20;
  cfg.model.beta_a = 2e-2;
  cfg.model.beta_i = 2e-2;
  cfg.model.b = 0.2;
  cfg.model.mu = 2e-5;
  cfg.model.gamma = 0.5;
  cfg.model.delta_a = 0.2;
  cfg.model.delta_i = 0.2;
  cfg.model.alpha = 0.5;
  cfg.model.d = 0.0027;
  cfg.model.sigma = {0.05, 0.05, 0.05, 0.05};
  cfg.init = State{1500, 5, 6, 25};
  cfg.grid = TimeGrid{0, 2000, 0.002};
  cfg.ensemble.n_traj = 100;
  cfg.ensemble.master_seed = 1001;
  cfg.analysis.burn_in = 500;
  cfg.analysis.n_bins = 50;
  cfg.analysis.histogram_component = Compartment::I;
  return cfg;
}

RunConfig example6() {
  RunConfig cfg;
  cfg.model.lambda = 12;
  cfg.model.beta_a = 3e-5;
  cfg.model.beta_i = 3e-5;
  cfg.model.b = 4.3e-5;
  cfg.model.mu = 7.37e-3;
  cfg.model.gamma = 0.5;
  cfg.model.delta_a = 0.92;
  cfg.model.delta_i = 0.92;
  cfg.model.alpha = 0.072;
  cfg.model.d = 0.0727;
  cfg.model.sigma = {0.1, 0.1, 0.1, 0.1};
  cfg.init = State{624964, 5, 6, 25};
  cfg.grid = TimeGrid{0, 6, 0.002};
  cfg.ensemble.n_traj = 50;
  cfg.ensemble.master_seed = 7;
  cfg.control.weights.p1 = 0;
  cfg.control.weights.p2 = 1;
  cfg.control.weights.p3 = 1;
  cfg.control.weights.q1 = 2e5;
  cfg.control.weights.q2 = 0.5;
  cfg.control.sweep.max_iter = 100;
  cfg.control.sweep.tol = 1e-8;
  cfg.control.sweep.omega = 0.3;
  cfg.control.sweep.mode = ProjectionMode::hamiltonian;
  return cfg;
}

RunConfig by_name(std::string_view name) {
  if (name == "example1") return example1();
  if (name == "example2") return example2();
  if (name == "example3") return example3();
  if (name == "example4") return example4();
  if (name == "example5") return example5();
  if (name == "example6") return example6();
  throw std::invalid_argument("unknown preset: " + std::string(name) +
                              " (expected example1 .. example6)");
}

std::vector<std::string> names() {
  return {"example1", "example2", "example3", "example4", "example5", "example6"};
}

}  // namespace sairs::presets
