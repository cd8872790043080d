#include "sairs/thresholds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sairs {

double compute_m(const ModelParams& p) {
  const double noise_power =
      p.sigma[0] * p.sigma[0] + p.sigma[1] * p.sigma[1] +
      p.sigma[2] * p.sigma[2] + p.sigma[3] * p.sigma[3];
  return 4.0 * p.mu + p.alpha + p.delta_a + p.delta_i + p.d + p.gamma +
         0.5 * noise_power;
}

double compute_r0s(const ModelParams& p) {
  const double beta = std::min(p.beta_a, p.beta_i);
  return 3.0 / compute_m(p) * std::cbrt(p.lambda * p.alpha * beta);
}

double compute_extinction_index(const ModelParams& p) {
  if (!(p.mu > 0))
    throw std::domain_error("compute_extinction_index: mu must be > 0");
  const double beta = std::max(p.beta_a, p.beta_i);
  const double h = std::min(p.mu + p.delta_a + 0.5 * p.sigma[1] * p.sigma[1],
                            p.mu + p.delta_i + p.d + 0.5 * p.sigma[2] * p.sigma[2]);
  return beta * p.lambda / p.mu - 0.5 * h;
}

PersistenceBounds compute_persistence_bounds(const ModelParams& p) {
  const double r0s = compute_r0s(p);
  if (!(r0s > 1.0))
    throw std::domain_error("compute_persistence_bounds: requires r0s > 1");
  const double removal_i = p.delta_i + p.mu + p.d;
  const double denom = p.alpha * p.beta_i + (p.beta_a + p.b * p.alpha) * removal_i;
  const double excess = compute_m(p) * (r0s - 1.0);
  PersistenceBounds out;
  out.i = p.alpha * excess / denom;
  out.a = removal_i * excess / denom;
  out.s = p.b * (p.mu + p.alpha + p.delta_a) * removal_i * excess /
          ((p.beta_a + p.beta_i) * denom);
  out.r = (p.delta_a * removal_i + p.alpha * p.delta_i) * excess /
          ((p.gamma + p.mu) * denom);
  return out;
}

ThresholdReport compute_thresholds(const ModelParams& p) {
  ThresholdReport rep;
  rep.m_const = compute_m(p);
  rep.r0s = compute_r0s(p);
  rep.beta_min = std::min(p.beta_a, p.beta_i);
  rep.beta_max = std::max(p.beta_a, p.beta_i);
  const double h = std::min(p.mu + p.delta_a + 0.5 * p.sigma[1] * p.sigma[1],
                            p.mu + p.delta_i + p.d + 0.5 * p.sigma[2] * p.sigma[2]);
  rep.h_const = h;
  rep.extinction_index = compute_extinction_index(p);
  if (rep.r0s > 1.0) rep.persistence_bounds = compute_persistence_bounds(p);
  return rep;
}

}  // namespace sairs
