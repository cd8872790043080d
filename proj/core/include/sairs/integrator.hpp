#ifndef SAIRS_INTEGRATOR_HPP
#define SAIRS_INTEGRATOR_HPP

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sairs/model.hpp"
#include "sairs/noise.hpp"

namespace sairs {

/** Uniform time grid on [t0, t_end] with n_steps = round((t_end - t0) / dt). */
struct TimeGrid {
  double t0 = 0;
  double t_end = 500;
  double dt = 0.002;

  std::size_t n_steps() const;
  double time_at(std::size_t k) const { return t0 + static_cast<double>(k) * dt; }

  /** Throws std::invalid_argument unless dt > 0, t0 < t_end and n_steps >= 1. */
  void validate() const;

  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;
};

/** Raised when a step produces a non-finite state; carries the step index. */
class SimulationError : public std::runtime_error {
 public:
  SimulationError(std::size_t step, const std::string& what)
      : std::runtime_error("step " + std::to_string(step) + ": " + what),
        step_(step) {}
  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

/** One sample path: n_steps + 1 states, optional per-step controls, and the
 *  number of negative-component truncations applied along the way. */
struct Trajectory {
  TimeGrid grid;
  std::vector<State> states;
  std::vector<ControlValue> controls;  ///< empty, or one entry per step
  std::size_t truncation_events = 0;
};

struct StepResult {
  State state;
  int truncated = 0;  ///< number of components clamped to zero this step
};

/** Deterministic Euler update x + f(x, u) dt.  Components are not clamped. */
State euler_step(const State& x, const ModelParams& p, double dt,
                 const ControlValue* u = nullptr);

/** One step of the order-1.0 strong scheme for linear multiplicative noise:
 *    x_k + f_k dt + sigma_k x_k sqrt(dt) z_k + (sigma_k^2 / 2) x_k (z_k^2 - 1) dt.
 *  With all sigma_k = 0 the result is value-identical to euler_step.
 *  Negative components are truncated to zero and counted; a non-finite result
 *  throws std::runtime_error. */
StepResult milstein_step(const State& x, const ModelParams& p, double dt,
                         const Vec4& z, const ControlValue* u = nullptr);

/** Classical fourth-order Runge-Kutta update with the control held fixed. */
State rk4_step(const State& x, const ModelParams& p, double dt,
               const ControlValue* u = nullptr);

/** Integrates one sample path.  Exactly four normals are drawn per step, in
 *  compartment order, so equal streams give bit-identical paths.  `controls`
 *  must be empty or hold one value per step (piecewise constant on [t_k, t_k+1)).
 *  Step failures are rethrown as SimulationError with the step index. */
Trajectory simulate_trajectory(const State& init, const ModelParams& p,
                               const TimeGrid& grid, NoiseStream& noise,
                               std::span<const ControlValue> controls = {});

/** Noise-free path via rk4_step on the same grid and control convention. */
Trajectory simulate_deterministic(const State& init, const ModelParams& p,
                                  const TimeGrid& grid,
                                  std::span<const ControlValue> controls = {});

}  // namespace sairs

#endif
