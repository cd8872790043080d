#include "sairs/control.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>

#include "sairs/ensemble.hpp"

namespace sairs {

void ObjectiveWeights::validate() const {
  const double vals[9] = {p1, p2, p3, q1, q2, k1, k2, k3, k4};
  const char* names[9] = {"p1", "p2", "p3", "q1", "q2", "k1", "k2", "k3", "k4"};
  for (int k = 0; k < 9; ++k) {
    if (!std::isfinite(vals[k]) || vals[k] < 0)
      throw std::invalid_argument(std::string("ObjectiveWeights: ") + names[k] +
                                  " must be finite and >= 0");
  }
  if (!(q1 > 0) || !(q2 > 0))
    throw std::invalid_argument("ObjectiveWeights: q1 and q2 must be > 0");
}

std::vector<ControlValue> ControlGrid::values() const {
  std::vector<ControlValue> out(u1.size());
  for (std::size_t k = 0; k < u1.size(); ++k) out[k] = {u1[k], u2[k]};
  return out;
}

ControlGrid ControlGrid::zeros(const TimeGrid& g) {
  ControlGrid c;
  c.grid = g;
  c.u1.assign(g.n_steps(), 0.0);
  c.u2.assign(g.n_steps(), 0.0);
  return c;
}

void ControlGrid::validate() const {
  grid.validate();
  const std::size_t n = grid.n_steps();
  if (u1.size() != n || u2.size() != n)
    throw std::invalid_argument("ControlGrid: need one (u1, u2) pair per step");
  for (std::size_t k = 0; k < n; ++k) {
    if (!(u1[k] >= 0 && u1[k] <= 1) || !(u2[k] >= 0 && u2[k] <= 1))
      throw std::invalid_argument("ControlGrid: controls must lie in [0, 1]");
  }
}

double running_cost(const State& x, const ControlValue& u, const ObjectiveWeights& w) {
  return w.p1 * x.s + w.p2 * x.a + w.p3 * x.i +
         0.5 * (w.q1 * u.u1 * u.u1 + w.q2 * u.u2 * u.u2) +
         0.5 * (w.k1 * x.s * x.s + w.k2 * x.a * x.a + w.k3 * x.i * x.i +
                w.k4 * x.r * x.r);
}

double terminal_cost(const State& x, const ObjectiveWeights& w) {
  return 0.5 * (w.k1 * x.s * x.s + w.k2 * x.a * x.a + w.k3 * x.i * x.i +
                w.k4 * x.r * x.r);
}

double hamiltonian(const State& x, const ControlValue& u, const Vec4& m,
                   const Vec4& n, const ObjectiveWeights& w, const ModelParams& p) {
  const Vec4 f = drift_controlled(x, u, p);
  double h = running_cost(x, u, w);
  for (std::size_t k = 0; k < 4; ++k) h += f[k] * m[k] + p.sigma[k] * x[k] * n[k];
  return h;
}

Vec4 adjoint_rhs(const State& x, const ControlValue& u, const Vec4& m,
                 const Vec4& n, const ObjectiveWeights& w, const ModelParams& p) {
  const double sat_a = 1.0 + p.b * x.a;
  const double sat_i = 1.0 + p.b * x.i;
  const double force = p.beta_i * x.i / sat_i + p.beta_a * x.a / sat_a;
  const double open_frac = 1.0 - u.u2;
  // d(force)/dA and d(force)/dI times S (1 - u2): the saturated slopes.
  const double slope_a = p.beta_a / (sat_a * sat_a) * x.s * open_frac;
  const double slope_i = p.beta_i / (sat_i * sat_i) * x.s * open_frac;
  return {
      -w.p1 - w.k1 * x.s + (m[0] - m[1]) * force * open_frac +
          m[0] * (p.mu + u.u1) - m[3] * u.u1 - p.sigma[0] * n[0],
      -w.p2 - w.k2 * x.a + (m[0] - m[1]) * slope_a +
          m[1] * (p.alpha + p.delta_a + p.mu) - m[2] * p.alpha -
          m[3] * p.delta_a - p.sigma[1] * n[1],
      -w.p3 - w.k3 * x.i + (m[0] - m[1]) * slope_i +
          m[2] * (p.delta_i + p.mu + p.d) - m[3] * p.delta_i - p.sigma[2] * n[2],
      -w.k4 * x.r - m[0] * p.gamma + m[3] * (p.gamma + p.mu) - p.sigma[3] * n[3],
  };
}

ControlValue control_projection(const State& x, const Vec4& m,
                                const ObjectiveWeights& w, const ModelParams& p,
                                ProjectionMode mode) {
  const auto clamp01 = [](double v) { return std::clamp(v, 0.0, 1.0); };
  ControlValue u;
  u.u1 = clamp01((m[0] - m[3]) * x.s / w.q1);
  if (mode == ProjectionMode::hamiltonian) {
    const double force = saturated_incidence(p.beta_i, x.i, p.b) +
                         saturated_incidence(p.beta_a, x.a, p.b);
    u.u2 = clamp01((m[1] - m[0]) * force * x.s / w.q2);
  } else {
    u.u2 = clamp01(((m[1] - m[3]) * x.a + (m[2] - m[3]) * x.i) / w.q2);
  }
  return u;
}

std::vector<Vec4> adjoint_backward(const Trajectory& nominal,
                                   const ObjectiveWeights& w, const ModelParams& p) {
  const std::size_t n = nominal.grid.n_steps();
  if (nominal.states.size() != n + 1)
    throw std::invalid_argument("adjoint_backward: trajectory/grid size mismatch");
  if (!nominal.controls.empty() && nominal.controls.size() != n)
    throw std::invalid_argument("adjoint_backward: controls must be empty or one per step");

  const double dt = nominal.grid.dt;
  const Vec4 zero{};
  std::vector<Vec4> m(n + 1);
  const State& xT = nominal.states.back();
  m[n] = {-w.k1 * xT.s, -w.k2 * xT.a, -w.k3 * xT.i, -w.k4 * xT.r};

  const auto shift = [](const Vec4& v, const Vec4& g, double h) {
    return Vec4{v[0] + h * g[0], v[1] + h * g[1], v[2] + h * g[2], v[3] + h * g[3]};
  };
  for (std::size_t k = n; k-- > 0;) {
    const State& x_lo = nominal.states[k];
    const State& x_hi = nominal.states[k + 1];
    State x_mid;
    for (std::size_t c = 0; c < 4; ++c) x_mid[c] = 0.5 * (x_lo[c] + x_hi[c]);
    const ControlValue u = nominal.controls.empty() ? ControlValue{0.0, 0.0}
                                                    : nominal.controls[k];
    const Vec4 r1 = adjoint_rhs(x_hi, u, m[k + 1], zero, w, p);
    const Vec4 r2 = adjoint_rhs(x_mid, u, shift(m[k + 1], r1, -0.5 * dt), zero, w, p);
    const Vec4 r3 = adjoint_rhs(x_mid, u, shift(m[k + 1], r2, -0.5 * dt), zero, w, p);
    const Vec4 r4 = adjoint_rhs(x_lo, u, shift(m[k + 1], r3, -dt), zero, w, p);
    for (std::size_t c = 0; c < 4; ++c)
      m[k][c] = m[k + 1][c] - dt / 6.0 * (r1[c] + 2.0 * r2[c] + 2.0 * r3[c] + r4[c]);
  }
  return m;
}

double objective_of_path(const Trajectory& traj, const ObjectiveWeights& w) {
  const std::size_t n = traj.grid.n_steps();
  if (traj.states.size() != n + 1)
    throw std::invalid_argument("objective_of_path: trajectory/grid size mismatch");
  double cost = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const ControlValue u = traj.controls.empty() ? ControlValue{0.0, 0.0}
                                                 : traj.controls[k];
    cost += running_cost(traj.states[k], u, w) * traj.grid.dt;
  }
  return cost + terminal_cost(traj.states.back(), w);
}

void SweepConfig::validate() const {
  if (max_iter < 1) throw std::invalid_argument("SweepConfig: max_iter must be >= 1");
  if (!(tol > 0)) throw std::invalid_argument("SweepConfig: tol must be > 0");
  if (!(omega > 0 && omega <= 1))
    throw std::invalid_argument("SweepConfig: omega must lie in (0, 1]");
}

namespace {

Trajectory sweep_forward(const State& init, const ModelParams& p,
                         const TimeGrid& grid, const ControlGrid& u,
                         const SweepConfig& cfg) {
  const std::vector<ControlValue> uv = u.values();
  if (cfg.stochastic_nominal) {
    NoiseStream noise(cfg.nominal_seed, 0);
    return simulate_trajectory(init, p, grid, noise, uv);
  }
  return simulate_deterministic(init, p, grid, uv);
}

}  // namespace

std::pair<ControlGrid, SweepReport> forward_backward_sweep(
    const State& init, const ModelParams& p, const ObjectiveWeights& w,
    const TimeGrid& grid, const SweepConfig& cfg) {
  p.validate();
  init.validate();
  grid.validate();
  w.validate();
  cfg.validate();

  const std::size_t n = grid.n_steps();
  ControlGrid u = ControlGrid::zeros(grid);
  Trajectory x = sweep_forward(init, p, grid, u, cfg);

  SweepReport rep;
  for (int it = 1; it <= cfg.max_iter; ++it) {
    const std::vector<Vec4> m = adjoint_backward(x, w, p);
    double change = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const ControlValue proj = control_projection(x.states[k], m[k], w, p, cfg.mode);
      const double nu1 = (1.0 - cfg.omega) * u.u1[k] + cfg.omega * proj.u1;
      const double nu2 = (1.0 - cfg.omega) * u.u2[k] + cfg.omega * proj.u2;
      change = std::max({change, std::abs(nu1 - u.u1[k]), std::abs(nu2 - u.u2[k])});
      u.u1[k] = nu1;
      u.u2[k] = nu2;
    }
    x = sweep_forward(init, p, grid, u, cfg);
    rep.iterations = it;
    rep.control_change_history.push_back(change);
    rep.objective_history.push_back(objective_of_path(x, w));
    if (change < cfg.tol) {
      rep.converged = true;
      break;
    }
  }

  if (rep.converged) {
    // Snap to the exact pointwise minimizer so the returned schedule satisfies
    // the stationarity condition along its own nominal path.
    const std::vector<Vec4> m = adjoint_backward(x, w, p);
    for (std::size_t k = 0; k < n; ++k) {
      const ControlValue proj = control_projection(x.states[k], m[k], w, p, cfg.mode);
      u.u1[k] = proj.u1;
      u.u2[k] = proj.u2;
    }
    x = sweep_forward(init, p, grid, u, cfg);
  }
  rep.final_objective = objective_of_path(x, w);
  return {std::move(u), std::move(rep)};
}

ObjectiveEstimate objective_estimate(const State& init, const ModelParams& p,
                                     const ObjectiveWeights& w,
                                     const ControlGrid& controls,
                                     std::size_t n_traj, std::uint64_t master_seed) {
  p.validate();
  init.validate();
  w.validate();
  controls.validate();
  if (n_traj == 0)
    throw std::invalid_argument("objective_estimate: n_traj must be >= 1");

  const TimeGrid& grid = controls.grid;
  const std::size_t n = grid.n_steps();
  const std::vector<ControlValue> uv = controls.values();

  std::vector<double> costs(n_traj);
  std::optional<EnsembleError> first_error;
  std::mutex error_mutex;

  auto worker = [&](std::size_t j) {
    NoiseStream noise(master_seed, j);
    State x = init;
    double cost = 0;
    for (std::size_t k = 0; k < n; ++k) {
      cost += running_cost(x, uv[k], w) * grid.dt;
      const Vec4 z = noise.normal4();
      x = milstein_step(x, p, grid.dt, z, &uv[k]).state;
    }
    costs[j] = cost + terminal_cost(x, w);
  };

  unsigned n_threads = std::max(1u, std::thread::hardware_concurrency());
  n_threads = static_cast<unsigned>(std::min<std::size_t>(n_threads, n_traj));
  if (n_threads <= 1) {
    for (std::size_t j = 0; j < n_traj; ++j) {
      try {
        worker(j);
      } catch (const std::exception& e) {
        throw EnsembleError(j, e.what());
      }
    }
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) {
      pool.emplace_back([&, t]() {
        for (std::size_t j = t; j < n_traj; j += n_threads) {
          try {
            worker(j);
          } catch (const std::exception& e) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error || j < first_error->trajectory_index())
              first_error = EnsembleError(j, e.what());
            return;
          }
        }
      });
    }
    for (std::thread& t : pool) t.join();
    if (first_error) throw *first_error;
  }

  ObjectiveEstimate est;
  double sum = 0;
  for (double c : costs) sum += c;
  est.value = sum / static_cast<double>(n_traj);
  if (n_traj > 1) {
    double ss = 0;
    for (double c : costs) ss += (c - est.value) * (c - est.value);
    est.std_error = std::sqrt(ss / (static_cast<double>(n_traj) *
                                    static_cast<double>(n_traj - 1)));
  }
  return est;
}

}  // namespace sairs
