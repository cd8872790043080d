#include "sairs/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "sairs/analysis.hpp"
#include "sairs/config.hpp"
#include "sairs/control.hpp"
#include "sairs/ensemble.hpp"
#include "sairs/io.hpp"
#include "sairs/presets.hpp"
#include "sairs/thresholds.hpp"

namespace sairs {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

// --- 1: reproduction index value and evaluation speed -----------------------

CriterionResult check_reproduction_index() {
  CriterionResult res{1, "reproduction index value and speed", false, ""};
  const RunConfig cfg = presets::example1();
  const double r0s = compute_r0s(cfg.model);

  volatile double sink = 0;
  const int reps = 1000;
  const auto start = std::chrono::steady_clock::now();
  for (int k = 0; k < reps; ++k) sink = sink + compute_r0s(cfg.model);
  const auto stop = std::chrono::steady_clock::now();
  (void)sink;
  const double mean_us =
      std::chrono::duration<double, std::micro>(stop - start).count() / reps;

  const bool value_ok = std::abs(r0s - 1.132) <= 0.001;
  const bool time_ok = mean_us < 1000.0;
  res.passed = value_ok && time_ok;
  res.detail = "r0s=" + fmt(r0s) + " (target 1.132 +/- 0.001), mean eval " +
               fmt(mean_us) + " us (limit 1000 us)";
  return res;
}

// --- 2: extinction index sign and value -------------------------------------

CriterionResult check_extinction_index() {
  CriterionResult res{2, "extinction index sign and value", false, ""};
  const RunConfig cfg = presets::example4();
  const double idx = compute_extinction_index(cfg.model);
  const bool sign_ok = idx < 0;
  const bool value_ok = std::abs(idx - (-0.3281)) <= 0.0005;
  res.passed = sign_ok && value_ok;
  res.detail = "extinction_index=" + fmt(idx) +
               " (must be < 0 and within -0.3281 +/- 0.0005)";
  return res;
}

// --- 3: time averages exceed the persistence bounds --------------------------

CriterionResult check_persistence() {
  CriterionResult res{3, "time averages exceed persistence bounds", false, ""};
  const RunConfig cfg = presets::example1();
  EnsembleOptions opts;
  opts.n_traj = cfg.ensemble.n_traj;
  opts.master_seed = cfg.ensemble.master_seed;
  const EnsembleSummary ens = run_ensemble(cfg.init, cfg.model, cfg.grid, opts);
  const PersistenceReport rep = persistence_check(ens, cfg.model);
  res.passed = rep.all_satisfied();
  const double bounds[4] = {rep.bounds.s, rep.bounds.a, rep.bounds.i, rep.bounds.r};
  static const char* names[4] = {"S", "A", "I", "R"};
  std::string detail;
  for (int c = 0; c < 4; ++c) {
    if (c) detail += ", ";
    detail += std::string(names[c]) + "_avg=" + fmt(rep.time_averages[c]) +
              " > bound " + fmt(bounds[c]) + (rep.satisfied[c] ? " ok" : " VIOLATED");
  }
  res.detail = detail + " (n_traj=" + std::to_string(rep.n_traj) + ")";
  return res;
}

// --- 4: decay diagnostics in the extinction regime ---------------------------

CriterionResult check_extinction_ensemble() {
  CriterionResult res{4, "infection decays in the extinction regime", false, ""};
  const RunConfig cfg = presets::example4();
  const std::size_t n_traj = cfg.ensemble.n_traj;
  const auto [fit_lo, fit_hi] = cfg.fit_window();

  // Mean of S over four equal windows covering the last quarter of the run.
  const double quarter_lo = cfg.grid.t_end - 0.25 * (cfg.grid.t_end - cfg.grid.t0);
  const double wlen = (cfg.grid.t_end - quarter_lo) / 4.0;

  std::vector<ExtinctionReport> reports(n_traj);
  std::vector<std::array<double, 4>> wsums(n_traj, std::array<double, 4>{});
  std::array<std::size_t, 4> wcounts{};
  const std::size_t n_steps = cfg.grid.n_steps();
  for (std::size_t k = 0; k <= n_steps; ++k) {
    const double t = cfg.grid.time_at(k);
    if (t < quarter_lo) continue;
    int w = static_cast<int>((t - quarter_lo) / wlen);
    if (w > 3) w = 3;
    ++wcounts[static_cast<std::size_t>(w)];
  }

  const unsigned n_threads = std::max(
      1u, std::min(std::thread::hardware_concurrency(),
                   static_cast<unsigned>(n_traj)));
  std::vector<std::thread> pool;
  for (unsigned tid = 0; tid < n_threads; ++tid) {
    pool.emplace_back([&, tid]() {
      for (std::size_t j = tid; j < n_traj; j += n_threads) {
        NoiseStream noise(cfg.ensemble.master_seed, j);
        const Trajectory traj =
            simulate_trajectory(cfg.init, cfg.model, cfg.grid, noise);
        reports[j] = extinction_check(traj, cfg.model, fit_lo, fit_hi);
        for (std::size_t k = 0; k <= n_steps; ++k) {
          const double t = cfg.grid.time_at(k);
          if (t < quarter_lo) continue;
          int w = static_cast<int>((t - quarter_lo) / wlen);
          if (w > 3) w = 3;
          wsums[j][static_cast<std::size_t>(w)] += traj.states[k].s;
        }
      }
    });
  }
  for (std::thread& t : pool) t.join();

  const ExtinctionEnsembleSummary sum = summarize_extinction(reports, 1.0);

  const double target = cfg.model.lambda / cfg.model.mu;
  std::array<double, 4> wmean{};
  for (std::size_t w = 0; w < 4; ++w) {
    double total = 0;
    for (std::size_t j = 0; j < n_traj; ++j) total += wsums[j][w];
    wmean[w] = total / (static_cast<double>(wcounts[w]) * static_cast<double>(n_traj));
  }
  std::array<double, 4> dist{};
  for (std::size_t w = 0; w < 4; ++w) dist[w] = std::abs(wmean[w] - target);
  const bool monotone = dist[0] > dist[1] && dist[1] > dist[2] && dist[2] > dist[3];

  const bool slopes_ok = sum.n_decaying >= 95;
  const bool terminal_ok = sum.n_terminal_below >= 95;
  res.passed = slopes_ok && terminal_ok && monotone;
  res.detail = "decaying slopes " + std::to_string(sum.n_decaying) + "/100 (need >= 95), " +
               "terminal A+I < 1 in " + std::to_string(sum.n_terminal_below) +
               "/100 (need >= 95), |mean S - " + fmt(target) + "| over last-quarter windows: " +
               fmt(dist[0]) + " > " + fmt(dist[1]) + " > " + fmt(dist[2]) + " > " +
               fmt(dist[3]) + (monotone ? " (monotone)" : " (NOT monotone)");
  return res;
}

// --- 5: stationary histogram stability across seeds --------------------------

CriterionResult check_stationary_stability() {
  CriterionResult res{5, "stationary histogram stability across seeds", false, ""};
  const RunConfig cfg = presets::example5();
  const std::uint64_t seed_a = cfg.ensemble.master_seed;
  const std::uint64_t seed_b = seed_a + 1;

  Histogram ha, hb;
  {
    NoiseStream noise(seed_a, 0);
    const Trajectory traj = simulate_trajectory(cfg.init, cfg.model, cfg.grid, noise);
    ha = stationary_histogram(traj, cfg.burn_in(), cfg.analysis.n_bins,
                              cfg.analysis.histogram_component);
  }
  {
    NoiseStream noise(seed_b, 0);
    const Trajectory traj = simulate_trajectory(cfg.init, cfg.model, cfg.grid, noise);
    hb = stationary_histogram(traj, cfg.burn_in(), cfg.analysis.n_bins,
                              cfg.analysis.histogram_component);
  }
  const double tv = histogram_distance(ha, hb);
  res.passed = tv < 0.1;
  res.detail = "tv_distance=" + fmt(tv) + " (limit 0.1) between seeds " +
               std::to_string(seed_a) + " and " + std::to_string(seed_b) +
               ", horizon " + fmt(cfg.grid.t_end) + ", burn-in " + fmt(cfg.burn_in());
  return res;
}

// --- 6: noise-free reduction matches the deterministic solver ----------------

CriterionResult check_noise_free_reduction() {
  CriterionResult res{6, "noise-free paths match the deterministic solver", false, ""};
  RunConfig cfg = presets::example1();
  cfg.model.sigma = {0, 0, 0, 0};

  NoiseStream noise(cfg.ensemble.master_seed, 0);
  const Trajectory stoch = simulate_trajectory(cfg.init, cfg.model, cfg.grid, noise);

  // Exactness of the Euler reduction, step by step along the same path.
  double max_rel_euler = 0;
  {
    State x = cfg.init;
    for (std::size_t k = 0; k + 1 < stoch.states.size(); ++k) {
      x = euler_step(x, cfg.model, cfg.grid.dt);
      for (std::size_t c = 0; c < 4; ++c) {
        const double ref = stoch.states[k + 1][c];
        const double diff = std::abs(x[c] - ref);
        const double rel = diff / std::max(1.0, std::abs(ref));
        max_rel_euler = std::max(max_rel_euler, rel);
      }
      x = stoch.states[k + 1];  // stay on the reference path
    }
  }

  const Trajectory det = simulate_deterministic(cfg.init, cfg.model, cfg.grid);
  double max_rel_norm = 0;
  for (std::size_t k = 0; k < det.states.size(); ++k) {
    double diff2 = 0, ref2 = 0;
    for (std::size_t c = 0; c < 4; ++c) {
      const double dd = stoch.states[k][c] - det.states[k][c];
      diff2 += dd * dd;
      ref2 += det.states[k][c] * det.states[k][c];
    }
    max_rel_norm = std::max(max_rel_norm, std::sqrt(diff2 / ref2));
  }

  const bool euler_ok = max_rel_euler <= 1e-15;
  const bool det_ok = max_rel_norm < 1e-3;
  res.passed = euler_ok && det_ok;
  res.detail = "euler reduction max rel diff=" + fmt(max_rel_euler) +
               " (limit 1e-15), state-norm deviation from rk4=" + fmt(max_rel_norm) +
               " (limit 1e-3) at dt=" + fmt(cfg.grid.dt) + " over [0, " +
               fmt(cfg.grid.t_end) + "]";
  return res;
}

// --- 7: costate field equals the negated Hamiltonian gradient ----------------

CriterionResult check_costate_gradient() {
  CriterionResult res{7, "costate field matches Hamiltonian gradient", false, ""};
  std::mt19937_64 rng(12345);
  auto uni = [&](double lo, double hi) {
    return lo + (hi - lo) *
                    (static_cast<double>(rng() >> 11) * 0x1.0p-53);
  };

  double max_rel = 0;
  for (int trial = 0; trial < 20; ++trial) {
    ModelParams p;
    p.lambda = uni(1, 30);
    p.beta_a = uni(1e-5, 0.02);
    p.beta_i = uni(1e-5, 0.02);
    p.b = uni(0, 0.5);
    p.mu = uni(1e-5, 0.01);
    p.gamma = uni(0.1, 0.6);
    p.delta_a = uni(0.1, 1.0);
    p.delta_i = uni(0.1, 1.0);
    p.alpha = uni(0.01, 0.6);
    p.d = uni(0, 0.1);
    for (int c = 0; c < 4; ++c) p.sigma[static_cast<std::size_t>(c)] = uni(0, 0.8);

    State x{uni(10, 2000), uni(1, 500), uni(1, 500), uni(1, 2000)};
    ControlValue u{uni(0, 1), uni(0, 1)};
    Vec4 m{uni(-5, 5), uni(-5, 5), uni(-5, 5), uni(-5, 5)};
    Vec4 n{uni(-5, 5), uni(-5, 5), uni(-5, 5), uni(-5, 5)};
    ObjectiveWeights w;
    w.p1 = uni(0, 2);
    w.p2 = uni(0, 2);
    w.p3 = uni(0, 2);
    w.q1 = uni(0.1, 10);
    w.q2 = uni(0.1, 10);
    w.k1 = uni(0, 1e-3);
    w.k2 = uni(0, 1e-3);
    w.k3 = uni(0, 1e-3);
    w.k4 = uni(0, 1e-3);

    const Vec4 rhs = adjoint_rhs(x, u, m, n, w, p);
    for (std::size_t c = 0; c < 4; ++c) {
      const double h = 1e-5 * std::max(1.0, std::abs(x[c]));
      State xp = x, xm = x;
      xp[c] += h;
      xm[c] -= h;
      const double grad =
          (hamiltonian(xp, u, m, n, w, p) - hamiltonian(xm, u, m, n, w, p)) /
          (2.0 * h);
      const double rel = std::abs(rhs[c] + grad) / std::max(1.0, std::abs(grad));
      max_rel = std::max(max_rel, rel);
    }
  }
  res.passed = max_rel < 1e-5;
  res.detail = "max rel error of dm/dt vs -dH/dx over 20 random points: " +
               fmt(max_rel) + " (limit 1e-5, central differences, 1e-5 rel step)";
  return res;
}

// --- 8: converged schedule is stationary in the control ----------------------

CriterionResult check_stationarity() {
  CriterionResult res{8, "converged schedule is control-stationary", false, ""};
  const RunConfig cfg = presets::example6();
  const auto [u, rep] = forward_backward_sweep(cfg.init, cfg.model,
                                               cfg.control.weights, cfg.grid,
                                               cfg.control.sweep);
  if (!rep.converged) {
    res.detail = "sweep did not converge in " + std::to_string(rep.iterations) +
                 " iterations; stationarity not evaluated";
    return res;
  }
  const Trajectory x = simulate_deterministic(cfg.init, cfg.model, cfg.grid, u.values());
  const std::vector<Vec4> m = adjoint_backward(x, cfg.control.weights, cfg.model);
  const std::size_t n = cfg.grid.n_steps();
  const Vec4 zero{};

  double scale = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    const ControlValue uk{u.u1[k], u.u2[k]};
    scale = std::max(scale, std::abs(hamiltonian(x.states[k], uk, m[k], zero,
                                                 cfg.control.weights, cfg.model)));
  }

  double max_grad = 0;
  std::size_t n_unclamped = 0;
  const ObjectiveWeights& w = cfg.control.weights;
  for (std::size_t k = 0; k < n; ++k) {
    const State& xk = x.states[k];
    if (u.u1[k] > 0 && u.u1[k] < 1) {
      const double g = w.q1 * u.u1[k] - (m[k][0] - m[k][3]) * xk.s;
      max_grad = std::max(max_grad, std::abs(g));
      ++n_unclamped;
    }
    if (u.u2[k] > 0 && u.u2[k] < 1) {
      const double force = saturated_incidence(cfg.model.beta_i, xk.i, cfg.model.b) +
                           saturated_incidence(cfg.model.beta_a, xk.a, cfg.model.b);
      const double g = w.q2 * u.u2[k] - (m[k][1] - m[k][0]) * force * xk.s;
      max_grad = std::max(max_grad, std::abs(g));
      ++n_unclamped;
    }
  }
  const double rel = max_grad / scale;
  res.passed = rel < 1e-6;
  res.detail = "max |dH/du| at " + std::to_string(n_unclamped) +
               " unclamped points: " + fmt(max_grad) + ", cost scale " + fmt(scale) +
               ", ratio " + fmt(rel) + " (limit 1e-6)";
  return res;
}

// --- 9: intervention halves the infected load --------------------------------

CriterionResult check_intervention_effect() {
  CriterionResult res{9, "intervention halves the infected load", false, ""};
  const RunConfig cfg = presets::example6();
  const auto [u, rep] = forward_backward_sweep(cfg.init, cfg.model,
                                               cfg.control.weights, cfg.grid,
                                               cfg.control.sweep);
  const bool converged_ok =
      rep.converged && rep.iterations <= 100 &&
      !rep.control_change_history.empty() &&
      rep.control_change_history.back() < 1e-4;

  EnsembleOptions opts;
  opts.n_traj = cfg.ensemble.n_traj;
  opts.master_seed = cfg.ensemble.master_seed;
  const EnsembleSummary unc = run_ensemble(cfg.init, cfg.model, cfg.grid, opts);
  const std::vector<ControlValue> uv = u.values();
  const EnsembleSummary ctl = run_ensemble(cfg.init, cfg.model, cfg.grid, opts, uv);

  const double unc_a = unc.mean.back()[1], unc_i = unc.mean.back()[2];
  const double ctl_a = ctl.mean.back()[1], ctl_i = ctl.mean.back()[2];
  const bool a_ok = ctl_a <= 0.5 * unc_a;
  const bool i_ok = ctl_i <= 0.5 * unc_i;
  res.passed = converged_ok && a_ok && i_ok;
  res.detail = "converged=" + std::string(rep.converged ? "yes" : "no") + " in " +
               std::to_string(rep.iterations) + " iterations (last change " +
               fmt(rep.control_change_history.empty() ? -1.0
                                                      : rep.control_change_history.back()) +
               ", limit 1e-4 within 100); mean A(T) " + fmt(ctl_a) + " vs " +
               fmt(unc_a) + " uncontrolled, mean I(T) " + fmt(ctl_i) + " vs " +
               fmt(unc_i) + " (each must drop to <= 50%)";
  return res;
}

// --- 10: byte-identical reruns across thread counts --------------------------

CriterionResult check_reproducibility() {
  CriterionResult res{10, "byte-identical reruns across thread counts", false, ""};
  RunConfig cfg = presets::example1();
  cfg.grid.t_end = 10;  // shortened horizon; the check is about byte equality

  std::string first, second;
  {
    NoiseStream noise(cfg.ensemble.master_seed, 0);
    first = trajectory_csv(simulate_trajectory(cfg.init, cfg.model, cfg.grid, noise));
  }
  {
    NoiseStream noise(cfg.ensemble.master_seed, 0);
    second = trajectory_csv(simulate_trajectory(cfg.init, cfg.model, cfg.grid, noise));
  }
  const bool rerun_ok = first == second;

  EnsembleOptions opts;
  opts.n_traj = 16;
  opts.master_seed = cfg.ensemble.master_seed;
  std::array<std::string, 3> csvs;
  const unsigned threads[3] = {1, 3, 4};
  for (int v = 0; v < 3; ++v) {
    opts.n_threads = threads[v];
    csvs[static_cast<std::size_t>(v)] =
        ensemble_csv(run_ensemble(cfg.init, cfg.model, cfg.grid, opts));
  }
  const bool threads_ok = csvs[0] == csvs[1] && csvs[1] == csvs[2];

  res.passed = rerun_ok && threads_ok;
  res.detail = std::string("rerun CSV ") + (rerun_ok ? "identical" : "DIFFERS") +
               " (" + std::to_string(first.size()) + " bytes); ensemble CSV across 1/3/4 threads " +
               (threads_ok ? "identical" : "DIFFERS") + " (" +
               std::to_string(csvs[0].size()) + " bytes)";
  return res;
}

}  // namespace

CriterionResult run_criterion(int id) {
  if (id < 1 || id > 10)
    throw std::invalid_argument("criterion id must lie in 1..10");
  try {
    switch (id) {
      case 1: return check_reproduction_index();
      case 2: return check_extinction_index();
      case 3: return check_persistence();
      case 4: return check_extinction_ensemble();
      case 5: return check_stationary_stability();
      case 6: return check_noise_free_reduction();
      case 7: return check_costate_gradient();
      case 8: return check_stationarity();
      case 9: return check_intervention_effect();
      default: return check_reproducibility();
    }
  } catch (const std::exception& e) {
    return CriterionResult{id, "criterion " + std::to_string(id), false,
                           std::string("exception: ") + e.what()};
  }
}

std::vector<CriterionResult> run_verification() {
  std::vector<CriterionResult> out;
  out.reserve(10);
  for (int id = 1; id <= 10; ++id) out.push_back(run_criterion(id));
  return out;
}

std::string verify_json(const std::vector<CriterionResult>& results) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const CriterionResult& r : results) {
    nlohmann::ordered_json row;
    row["id"] = r.id;
    row["name"] = r.name;
    row["passed"] = r.passed;
    row["detail"] = r.detail;
    j.push_back(std::move(row));
  }
  return j.dump(2) + "\n";
}

}  // namespace sairs
