#include "sairs/integrator.hpp"

#include <cmath>

namespace sairs {

std::size_t TimeGrid::n_steps() const {
  return static_cast<std::size_t>(std::llround((t_end - t0) / dt));
}

void TimeGrid::validate() const {
  if (!std::isfinite(t0) || !std::isfinite(t_end) || !std::isfinite(dt))
    throw std::invalid_argument("TimeGrid: bounds and dt must be finite");
  if (!(dt > 0)) throw std::invalid_argument("TimeGrid: dt must be > 0");
  if (!(t0 < t_end)) throw std::invalid_argument("TimeGrid: t0 must be < t_end");
  if (n_steps() < 1) throw std::invalid_argument("TimeGrid: needs at least one step");
}

State euler_step(const State& x, const ModelParams& p, double dt,
                 const ControlValue* u) {
  const Vec4 f = u ? drift_controlled(x, *u, p) : drift(x, p);
  State out;
  for (std::size_t k = 0; k < 4; ++k) out[k] = x[k] + f[k] * dt;
  return out;
}

StepResult milstein_step(const State& x, const ModelParams& p, double dt,
                         const Vec4& z, const ControlValue* u) {
  const Vec4 f = u ? drift_controlled(x, *u, p) : drift(x, p);
  const double sq = std::sqrt(dt);
  StepResult res;
  for (std::size_t k = 0; k < 4; ++k) {
    const double xk = x[k];
    const double sk = p.sigma[k];
    double v = xk + f[k] * dt + sk * xk * sq * z[k] +
               0.5 * sk * sk * xk * (z[k] * z[k] - 1.0) * dt;
    if (v < 0) {
      v = 0;
      ++res.truncated;
    }
    if (!std::isfinite(v))
      throw std::runtime_error("milstein_step: non-finite state component");
    res.state[k] = v;
  }
  return res;
}

State rk4_step(const State& x, const ModelParams& p, double dt,
               const ControlValue* u) {
  const ControlValue uc = u ? *u : ControlValue{0.0, 0.0};
  const auto add = [](const State& y, const Vec4& k, double h) {
    State out;
    for (std::size_t j = 0; j < 4; ++j) out[j] = y[j] + h * k[j];
    return out;
  };
  const Vec4 k1 = drift_controlled(x, uc, p);
  const Vec4 k2 = drift_controlled(add(x, k1, 0.5 * dt), uc, p);
  const Vec4 k3 = drift_controlled(add(x, k2, 0.5 * dt), uc, p);
  const Vec4 k4 = drift_controlled(add(x, k3, dt), uc, p);
  State out;
  for (std::size_t j = 0; j < 4; ++j)
    out[j] = x[j] + dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
  return out;
}

namespace {

void check_controls(std::span<const ControlValue> controls, std::size_t n_steps) {
  if (!controls.empty() && controls.size() != n_steps)
    throw std::invalid_argument("controls must be empty or one per step");
  for (const ControlValue& u : controls) u.validate();
}

}  // namespace

Trajectory simulate_trajectory(const State& init, const ModelParams& p,
                               const TimeGrid& grid, NoiseStream& noise,
                               std::span<const ControlValue> controls) {
  p.validate();
  init.validate();
  grid.validate();
  const std::size_t n = grid.n_steps();
  check_controls(controls, n);

  Trajectory traj;
  traj.grid = grid;
  traj.states.reserve(n + 1);
  traj.states.push_back(init);
  if (!controls.empty()) traj.controls.assign(controls.begin(), controls.end());

  State x = init;
  for (std::size_t k = 0; k < n; ++k) {
    const Vec4 z = noise.normal4();
    const ControlValue* u = controls.empty() ? nullptr : &controls[k];
    try {
      StepResult r = milstein_step(x, p, grid.dt, z, u);
      x = r.state;
      traj.truncation_events += static_cast<std::size_t>(r.truncated);
    } catch (const std::exception& e) {
      throw SimulationError(k, e.what());
    }
    traj.states.push_back(x);
  }
  return traj;
}

Trajectory simulate_deterministic(const State& init, const ModelParams& p,
                                  const TimeGrid& grid,
                                  std::span<const ControlValue> controls) {
  p.validate();
  init.validate();
  grid.validate();
  const std::size_t n = grid.n_steps();
  check_controls(controls, n);

  Trajectory traj;
  traj.grid = grid;
  traj.states.reserve(n + 1);
  traj.states.push_back(init);
  if (!controls.empty()) traj.controls.assign(controls.begin(), controls.end());

  State x = init;
  for (std::size_t k = 0; k < n; ++k) {
    const ControlValue* u = controls.empty() ? nullptr : &controls[k];
    x = rk4_step(x, p, grid.dt, u);
    for (std::size_t j = 0; j < 4; ++j)
      if (!std::isfinite(x[j])) throw SimulationError(k, "non-finite state component");
    traj.states.push_back(x);
  }
  return traj;
}

}  // namespace sairs
