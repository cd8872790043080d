#include "sairs/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sairs {

namespace {

void require_finite(double v, const char* field) {
  if (!std::isfinite(v))
    throw std::invalid_argument(std::string("ModelParams: ") + field + " must be finite");
}

void require_nonneg(double v, const char* field) {
  require_finite(v, field);
  if (v < 0)
    throw std::invalid_argument(std::string("ModelParams: ") + field + " must be >= 0");
}

}  // namespace

void ModelParams::validate() const {
  require_finite(lambda, "lambda");
  if (lambda <= 0) throw std::invalid_argument("ModelParams: lambda must be > 0");
  require_finite(mu, "mu");
  if (mu <= 0) throw std::invalid_argument("ModelParams: mu must be > 0");
  require_nonneg(beta_a, "beta_a");
  require_nonneg(beta_i, "beta_i");
  require_nonneg(b, "b");
  require_nonneg(gamma, "gamma");
  require_nonneg(delta_a, "delta_a");
  require_nonneg(delta_i, "delta_i");
  require_nonneg(alpha, "alpha");
  require_nonneg(d, "d");
  require_nonneg(sigma[0], "sigma[0]");
  require_nonneg(sigma[1], "sigma[1]");
  require_nonneg(sigma[2], "sigma[2]");
  require_nonneg(sigma[3], "sigma[3]");
}

double State::operator[](std::size_t k) const {
  switch (k) {
    case 0: return s;
    case 1: return a;
    case 2: return i;
    case 3: return r;
  }
  throw std::out_of_range("State index must be 0..3");
}

double& State::operator[](std::size_t k) {
  switch (k) {
    case 0: return s;
    case 1: return a;
    case 2: return i;
    case 3: return r;
  }
  throw std::out_of_range("State index must be 0..3");
}

void State::validate() const {
  static const char* names[4] = {"S", "A", "I", "R"};
  for (std::size_t k = 0; k < 4; ++k) {
    const double v = (*this)[k];
    if (!std::isfinite(v))
      throw std::invalid_argument(std::string("State: ") + names[k] + " must be finite");
    if (v < 0)
      throw std::invalid_argument(std::string("State: ") + names[k] + " must be >= 0");
  }
}

void ControlValue::validate() const {
  if (!(u1 >= 0 && u1 <= 1))
    throw std::invalid_argument("ControlValue: u1 must lie in [0, 1]");
  if (!(u2 >= 0 && u2 <= 1))
    throw std::invalid_argument("ControlValue: u2 must lie in [0, 1]");
}

double saturated_incidence(double beta, double x, double b) {
  if (!std::isfinite(beta) || !std::isfinite(x) || !std::isfinite(b))
    throw std::domain_error("saturated_incidence: arguments must be finite");
  if (x < 0)
    throw std::domain_error("saturated_incidence: x must be >= 0");
  return beta * x / (1.0 + b * x);
}

Vec4 drift_controlled(const State& x, const ControlValue& u, const ModelParams& p) {
  const double force = saturated_incidence(p.beta_i, x.i, p.b) +
                       saturated_incidence(p.beta_a, x.a, p.b);
  const double infection = force * (1.0 - u.u2) * x.s;
  return {
      p.lambda - infection - (p.mu + u.u1) * x.s + p.gamma * x.r,
      infection - (p.alpha + p.delta_a + p.mu) * x.a,
      p.alpha * x.a - (p.delta_i + p.mu + p.d) * x.i,
      p.delta_a * x.a + p.delta_i * x.i + u.u1 * x.s - (p.gamma + p.mu) * x.r,
  };
}

Vec4 drift(const State& x, const ModelParams& p) {
  return drift_controlled(x, ControlValue{0.0, 0.0}, p);
}

Vec4 diffusion(const State& x, const ModelParams& p) {
  return {p.sigma[0] * x.s, p.sigma[1] * x.a, p.sigma[2] * x.i, p.sigma[3] * x.r};
}

}  // namespace sairs
