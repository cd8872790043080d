#ifndef SAIRS_MODEL_HPP
#define SAIRS_MODEL_HPP

#include <array>
#include <cstddef>

namespace sairs {

using Vec4 = std::array<double, 4>;

/** Rates of the four-compartment epidemic model with two saturated incidences.
 *
 * Susceptible individuals are infected through contact with both asymptomatic
 * and symptomatic carriers; each contact term saturates with the carrier count.
 * All rates are per unit time, populations are head counts.
 */
struct ModelParams {
  double lambda = 0;   ///< recruitment inflow into S
  double beta_a = 0;   ///< transmission coefficient, asymptomatic contacts
  double beta_i = 0;   ///< transmission coefficient, symptomatic contacts
  double b = 0;        ///< saturation coefficient shared by both incidences
  double mu = 0;       ///< natural death rate (all compartments)
  double gamma = 0;    ///< immunity waning rate R -> S
  double delta_a = 0;  ///< recovery rate A -> R
  double delta_i = 0;  ///< recovery rate I -> R
  double alpha = 0;    ///< symptom onset rate A -> I
  double d = 0;        ///< disease-induced death rate (I only)
  Vec4 sigma{};        ///< white-noise intensities, one per compartment

  /** Throws std::invalid_argument naming the offending field.
   *  Requires: every field finite, lambda > 0, mu > 0, all others >= 0. */
  void validate() const;

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

/** Compartment populations (susceptible, asymptomatic, infected, recovered). */
struct State {
  double s = 0;
  double a = 0;
  double i = 0;
  double r = 0;

  double operator[](std::size_t k) const;
  double& operator[](std::size_t k);

  double total() const { return s + a + i + r; }

  /** Throws std::invalid_argument unless every component is finite and >= 0. */
  void validate() const;

  friend bool operator==(const State&, const State&) = default;
};

/** Intervention intensities: u1 moves S directly to R, u2 damps both incidences. */
struct ControlValue {
  double u1 = 0;
  double u2 = 0;

  /** Throws std::invalid_argument unless both lie in [0, 1]. */
  void validate() const;

  friend bool operator==(const ControlValue&, const ControlValue&) = default;
};

/** beta * x / (1 + b * x).  Increasing in x, bounded above by beta / b when b > 0.
 *  Throws std::domain_error if x is negative or any argument is non-finite. */
double saturated_incidence(double beta, double x, double b);

/** Drift field of the uncontrolled model.  At the origin only recruitment acts,
 *  and the component sum always equals lambda - mu * N - d * I. */
Vec4 drift(const State& x, const ModelParams& p);

/** Drift field with interventions applied: both incidences are scaled by
 *  (1 - u2) and an extra flow u1 * S runs from S to R.  With u = (0, 0) the
 *  result is identical to drift(). */
Vec4 drift_controlled(const State& x, const ControlValue& u, const ModelParams& p);

/** Linear multiplicative noise amplitudes (sigma_k * x_k), degree-1 homogeneous. */
Vec4 diffusion(const State& x, const ModelParams& p);

}  // namespace sairs

#endif
