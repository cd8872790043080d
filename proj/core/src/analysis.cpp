#include "sairs/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sairs {

const char* compartment_name(Compartment c) {
  switch (c) {
    case Compartment::S: return "S";
    case Compartment::A: return "A";
    case Compartment::I: return "I";
    case Compartment::R: return "R";
  }
  throw std::invalid_argument("compartment_name: bad component");
}

double time_average(const Trajectory& traj, Compartment c) {
  const std::size_t n = traj.grid.n_steps();
  if (traj.states.size() != n + 1)
    throw std::invalid_argument("time_average: trajectory/grid size mismatch");
  const std::size_t idx = static_cast<std::size_t>(c);
  double sum = 0;
  for (std::size_t k = 0; k < n; ++k) sum += traj.states[k][idx] * traj.grid.dt;
  return sum / (traj.grid.t_end - traj.grid.t0);
}

bool PersistenceReport::all_satisfied() const {
  return satisfied[0] && satisfied[1] && satisfied[2] && satisfied[3];
}

PersistenceReport persistence_check(const EnsembleSummary& ens, const ModelParams& p) {
  const double r0s = compute_r0s(p);
  if (!(r0s > 1.0))
    throw std::domain_error("persistence_check: requires r0s > 1");
  if (ens.time_avg.empty())
    throw std::invalid_argument("persistence_check: empty ensemble");

  PersistenceReport rep;
  rep.bounds = compute_persistence_bounds(p);
  rep.horizon = ens.grid.t_end;
  rep.n_traj = ens.n_traj;
  for (std::size_t c = 0; c < 4; ++c) {
    double sum = 0;
    for (const Vec4& avg : ens.time_avg) sum += avg[c];
    rep.time_averages[c] = sum / static_cast<double>(ens.time_avg.size());
  }
  const double bound[4] = {rep.bounds.s, rep.bounds.a, rep.bounds.i, rep.bounds.r};
  for (std::size_t c = 0; c < 4; ++c)
    rep.satisfied[c] = rep.time_averages[c] > bound[c];
  return rep;
}

ExtinctionReport extinction_check(const Trajectory& traj, const ModelParams& p,
                                  double fit_t0, double fit_t1) {
  if (!(fit_t0 < fit_t1))
    throw std::invalid_argument("extinction_check: fit window must be nonempty");
  const std::size_t n = traj.grid.n_steps();
  if (traj.states.size() != n + 1)
    throw std::invalid_argument("extinction_check: trajectory/grid size mismatch");

  ExtinctionReport rep;
  rep.extinction_index = compute_extinction_index(p);
  rep.terminal_infected = traj.states.back().a + traj.states.back().i;
  rep.s_terminal = traj.states.back().s;

  std::vector<double> ts, ys;
  for (std::size_t k = 0; k <= n; ++k) {
    const double t = traj.grid.time_at(k);
    if (t < fit_t0 || t > fit_t1) continue;
    const double infected = traj.states[k].a + traj.states[k].i;
    if (infected <= 0) {
      rep.truncated_at_zero = true;
      break;
    }
    ts.push_back(t);
    ys.push_back(std::log(infected));
  }
  if (ts.size() >= 2) {
    double t_mean = 0, y_mean = 0;
    for (std::size_t k = 0; k < ts.size(); ++k) {
      t_mean += ts[k];
      y_mean += ys[k];
    }
    t_mean /= static_cast<double>(ts.size());
    y_mean /= static_cast<double>(ts.size());
    double num = 0, den = 0;
    for (std::size_t k = 0; k < ts.size(); ++k) {
      num += (ts[k] - t_mean) * (ys[k] - y_mean);
      den += (ts[k] - t_mean) * (ts[k] - t_mean);
    }
    rep.log_slope = num / den;
    rep.slope_defined = true;
  }
  return rep;
}

ExtinctionEnsembleSummary summarize_extinction(std::span<const ExtinctionReport> reports,
                                               double terminal_threshold) {
  ExtinctionEnsembleSummary sum;
  sum.n_traj = reports.size();
  sum.terminal_threshold = terminal_threshold;
  double s_total = 0;
  for (const ExtinctionReport& r : reports) {
    if ((r.slope_defined && r.log_slope <= 0) || (!r.slope_defined && r.truncated_at_zero))
      ++sum.n_decaying;
    if (r.terminal_infected < terminal_threshold) ++sum.n_terminal_below;
    s_total += r.s_terminal;
  }
  if (!reports.empty()) sum.mean_terminal_s = s_total / static_cast<double>(reports.size());
  return sum;
}

Histogram stationary_histogram(const Trajectory& traj, double burn_in,
                               std::size_t n_bins, Compartment c) {
  if (n_bins == 0)
    throw std::invalid_argument("stationary_histogram: n_bins must be >= 1");
  if (!(burn_in >= 0))
    throw std::invalid_argument("stationary_histogram: burn_in must be >= 0");
  const std::size_t n = traj.grid.n_steps();
  if (traj.states.size() != n + 1)
    throw std::invalid_argument("stationary_histogram: trajectory/grid size mismatch");

  const double cutoff = traj.grid.t0 + burn_in;
  const std::size_t idx = static_cast<std::size_t>(c);
  std::vector<double> vals;
  for (std::size_t k = 0; k <= n; ++k)
    if (traj.grid.time_at(k) >= cutoff) vals.push_back(traj.states[k][idx]);
  if (vals.empty())
    throw std::invalid_argument("stationary_histogram: burn-in leaves no samples");

  Histogram h;
  h.component = c;
  h.burn_in = burn_in;
  h.n_samples = vals.size();

  const auto [lo_it, hi_it] = std::minmax_element(vals.begin(), vals.end());
  const double lo = *lo_it, hi = *hi_it;
  if (lo == hi) {
    h.degenerate = true;
    h.edges = {lo - 0.5, lo + 0.5};
    h.masses = {1.0};
    return h;
  }

  h.edges.resize(n_bins + 1);
  for (std::size_t k = 0; k <= n_bins; ++k)
    h.edges[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n_bins);
  h.edges.back() = hi;

  std::vector<std::size_t> counts(n_bins, 0);
  const double scale = static_cast<double>(n_bins) / (hi - lo);
  for (double v : vals) {
    std::size_t bin = static_cast<std::size_t>((v - lo) * scale);
    if (bin >= n_bins) bin = n_bins - 1;  // the maximum lands in the last bin
    ++counts[bin];
  }
  h.masses.resize(n_bins);
  for (std::size_t k = 0; k < n_bins; ++k)
    h.masses[k] = static_cast<double>(counts[k]) / static_cast<double>(vals.size());
  return h;
}

namespace {

// Mass of histogram h inside [lo, hi), treating each bin as uniform.
double mass_in(const Histogram& h, double lo, double hi) {
  double total = 0;
  for (std::size_t k = 0; k + 1 < h.edges.size(); ++k) {
    const double bl = h.edges[k], bh = h.edges[k + 1];
    if (bh <= bl) continue;
    const double ov_lo = std::max(lo, bl), ov_hi = std::min(hi, bh);
    if (ov_hi > ov_lo) total += h.masses[k] * (ov_hi - ov_lo) / (bh - bl);
  }
  return total;
}

}  // namespace

double histogram_distance(const Histogram& a, const Histogram& b) {
  if (a.component != b.component)
    throw std::domain_error("histogram_distance: components differ");
  if (a.edges.size() < 2 || b.edges.size() < 2)
    throw std::invalid_argument("histogram_distance: empty histogram");

  std::vector<double> edges;
  edges.reserve(a.edges.size() + b.edges.size());
  edges.insert(edges.end(), a.edges.begin(), a.edges.end());
  edges.insert(edges.end(), b.edges.begin(), b.edges.end());
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  double tv = 0;
  for (std::size_t k = 0; k + 1 < edges.size(); ++k)
    tv += std::abs(mass_in(a, edges[k], edges[k + 1]) - mass_in(b, edges[k], edges[k + 1]));
  return 0.5 * tv;
}

}  // namespace sairs
