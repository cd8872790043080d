#ifndef SAIRS_CONTROL_HPP
#define SAIRS_CONTROL_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "sairs/integrator.hpp"

namespace sairs {

/** Cost weights: linear running penalties p* on S, A, I, quadratic control
 *  efforts q*, and quadratic state penalties k* (k also sets the terminal
 *  cost and the adjoint terminal condition). */
struct ObjectiveWeights {
  double p1 = 0, p2 = 0, p3 = 0;
  double q1 = 1, q2 = 1;
  double k1 = 0, k2 = 0, k3 = 0, k4 = 0;

  /** Throws std::invalid_argument unless all finite, >= 0, and q1, q2 > 0. */
  void validate() const;

  friend bool operator==(const ObjectiveWeights&, const ObjectiveWeights&) = default;
};

/** Pointwise minimizer formula for the isolation control u2.
 *  `hamiltonian` derives it from the stationarity of H in u2 (the default);
 *  `paper` pairs A and I directly with their costates, ignoring the
 *  transmission factor, and does not reach stationarity of H. */
enum class ProjectionMode { hamiltonian, paper };

/** Piecewise-constant control pair on a time grid, one value per step. */
struct ControlGrid {
  TimeGrid grid;
  std::vector<double> u1;
  std::vector<double> u2;

  std::vector<ControlValue> values() const;
  static ControlGrid zeros(const TimeGrid& grid);

  /** Throws std::invalid_argument unless both arrays have one entry per step
   *  with every value in [0, 1]. */
  void validate() const;
};

/** Running cost l(x, u) = p1 S + p2 A + p3 I + q1 u1^2 / 2 + q2 u2^2 / 2
 *                         + (k1 S^2 + k2 A^2 + k3 I^2 + k4 R^2) / 2. */
double running_cost(const State& x, const ControlValue& u, const ObjectiveWeights& w);

/** Terminal cost (k1 S^2 + k2 A^2 + k3 I^2 + k4 R^2) / 2 at the final state. */
double terminal_cost(const State& x, const ObjectiveWeights& w);

/** H(x, u, m, n) = l(x, u) + <f(x, u), m> + sum_k sigma_k x_k n_k. */
double hamiltonian(const State& x, const ControlValue& u, const Vec4& m,
                   const Vec4& n, const ObjectiveWeights& w, const ModelParams& p);

/** dm/dt = -dH/dx evaluated componentwise (n enters through the noise term). */
Vec4 adjoint_rhs(const State& x, const ControlValue& u, const Vec4& m,
                 const Vec4& n, const ObjectiveWeights& w, const ModelParams& p);

/** Pointwise minimizer of H in u, clamped to [0, 1]^2:
 *    u1 = clamp((m1 - m4) S / q1)
 *    u2 = clamp((m2 - m1) G S / q2)               (hamiltonian mode)
 *    u2 = clamp(((m2 - m4) A + (m3 - m4) I) / q2) (paper mode)
 *  with G the total saturated infection force. */
ControlValue control_projection(const State& x, const Vec4& m,
                                const ObjectiveWeights& w, const ModelParams& p,
                                ProjectionMode mode);

/** Integrates the costates backward along a nominal path (n held at zero)
 *  from m(T) = -k .* x(T), fourth order, midpoint state interpolation.
 *  Returns one costate per grid node.  Controls are taken from the
 *  trajectory (zero when absent). */
std::vector<Vec4> adjoint_backward(const Trajectory& nominal,
                                   const ObjectiveWeights& w, const ModelParams& p);

/** Left-rectangle running cost plus terminal cost along one path.  Controls
 *  are taken from the trajectory (zero when absent). */
double objective_of_path(const Trajectory& traj, const ObjectiveWeights& w);

struct SweepConfig {
  int max_iter = 100;
  double tol = 1e-4;    ///< stop when the sup-norm control change drops below
  double omega = 0.5;   ///< relaxation weight on the new projected control
  ProjectionMode mode = ProjectionMode::hamiltonian;
  bool stochastic_nominal = false;  ///< forward passes ride one frozen noise path
  std::uint64_t nominal_seed = 0;   ///< noise seed when stochastic_nominal

  /** Throws std::invalid_argument unless 0 < omega <= 1, tol > 0, max_iter >= 1. */
  void validate() const;

  friend bool operator==(const SweepConfig&, const SweepConfig&) = default;
};

struct SweepReport {
  int iterations = 0;
  bool converged = false;
  double final_objective = 0;
  std::vector<double> control_change_history;  ///< sup-norm change per iteration
  std::vector<double> objective_history;       ///< objective after each iteration
};

/** Forward-backward sweep from u = 0: integrate the state forward, the
 *  costates backward, project, then relax u <- (1 - omega) u + omega proj.
 *  Convergence (change < tol) is followed by one exact projection polish.
 *  Hitting max_iter returns the last iterate with converged = false. */
std::pair<ControlGrid, SweepReport> forward_backward_sweep(
    const State& init, const ModelParams& p, const ObjectiveWeights& w,
    const TimeGrid& grid, const SweepConfig& cfg = {});

struct ObjectiveEstimate {
  double value = 0;
  double std_error = 0;  ///< zero when n_traj == 1
};

/** Monte Carlo estimate of the expected cost of a fixed control schedule,
 *  averaging the pathwise cost over n_traj noise substreams of master_seed.
 *  Deterministic for fixed inputs regardless of thread count. */
ObjectiveEstimate objective_estimate(const State& init, const ModelParams& p,
                                     const ObjectiveWeights& w,
                                     const ControlGrid& controls,
                                     std::size_t n_traj, std::uint64_t master_seed);

}  // namespace sairs

#endif
