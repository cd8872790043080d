#ifndef SAIRS_THRESHOLDS_HPP
#define SAIRS_THRESHOLDS_HPP

#include <optional>

#include "sairs/model.hpp"

namespace sairs {

/** Long-run lower bounds on the time averages of S, A, I, R.
 *  Defined only while the reproduction index exceeds one; every bound tends
 *  to zero as the index approaches one from above. */
struct PersistenceBounds {
  double s = 0;
  double a = 0;
  double i = 0;
  double r = 0;
};

/** Threshold quantities deciding long-run persistence versus extinction. */
struct ThresholdReport {
  double m_const = 0;           ///< aggregate outflow rate plus half total noise power
  double r0s = 0;               ///< stochastic reproduction index
  double beta_min = 0;          ///< min(beta_a, beta_i)
  double beta_max = 0;          ///< max(beta_a, beta_i)
  double h_const = 0;           ///< weaker of the two noise-augmented removal rates
  double extinction_index = 0;  ///< negative value predicts extinction
  std::optional<PersistenceBounds> persistence_bounds;  ///< present iff r0s > 1
};

/** 4*mu + alpha + delta_a + delta_i + d + gamma + (1/2) * sum(sigma_k^2). */
double compute_m(const ModelParams& p);

/** (3 / m) * cbrt(lambda * alpha * min(beta_a, beta_i)).
 *  Values above one predict persistence of the infection. */
double compute_r0s(const ModelParams& p);

/** max(beta_a, beta_i) * lambda / mu - h / 2, where h is the smaller of
 *  mu + delta_a + sigma_2^2 / 2 and mu + delta_i + d + sigma_3^2 / 2.
 *  Negative values predict extinction.  Throws std::domain_error if mu <= 0. */
double compute_extinction_index(const ModelParams& p);

/** Lower bounds on long-run time averages.  Requires r0s > 1, otherwise
 *  throws std::domain_error. */
PersistenceBounds compute_persistence_bounds(const ModelParams& p);

/** All thresholds in one pass; persistence bounds attached only when r0s > 1. */
ThresholdReport compute_thresholds(const ModelParams& p);

}  // namespace sairs

#endif
