#include <doctest.h>

#include <sairs/presets.hpp>
#include <sairs/thresholds.hpp>

#include <cmath>
#include <stdexcept>

using namespace sairs;

TEST_SUITE("thresholds") {

TEST_CASE("mean removal constant matches its closed form") {
  const ModelParams p = presets::example1().model;
  const double sq = 0.5 * (p.sigma[0] * p.sigma[0] + p.sigma[1] * p.sigma[1] +
                           p.sigma[2] * p.sigma[2] + p.sigma[3] * p.sigma[3]);
  const double expected = 4.0 * p.mu + p.alpha + p.delta_a + p.delta_i +
                          p.d + p.gamma + sq;
  CHECK(compute_m(p) == doctest::Approx(expected).epsilon(1e-15));
  CHECK(compute_m(p) == doctest::Approx(1.40778).epsilon(1e-10));
}

TEST_CASE("reproduction index pinned for the baseline endemic setup") {
  const ModelParams p = presets::example1().model;
  const double r0s = compute_r0s(p);
  CHECK(r0s == doctest::Approx(1.1322705634217824).epsilon(1e-12));
  CHECK(r0s > 1.131);
  CHECK(r0s < 1.133);
}

TEST_CASE("reproduction index pinned for the long-horizon setup") {
  const ModelParams p = presets::example5().model;
  CHECK(compute_r0s(p) == doctest::Approx(1.246225008827885).epsilon(1e-12));
}

TEST_CASE("extinction index pinned for the decaying setup") {
  const ModelParams p = presets::example4().model;
  const double e = compute_extinction_index(p);
  CHECK(e == doctest::Approx(-0.32813839999999994).epsilon(1e-12));
  CHECK(e < 0.0);
}

TEST_CASE("extinction index requires a positive natural death rate") {
  ModelParams p = presets::example1().model;
  p.mu = 0.0;
  CHECK_THROWS_AS(compute_extinction_index(p), std::domain_error);
}

TEST_CASE("persistence bounds pinned for the baseline endemic setup") {
  const ModelParams p = presets::example1().model;
  const PersistenceBounds b = compute_persistence_bounds(p);
  CHECK(b.s == doctest::Approx(9.679548940282588).epsilon(1e-12));
  CHECK(b.a == doctest::Approx(1.382753198520412).epsilon(1e-12));
  CHECK(b.i == doctest::Approx(3.4105001936671564).epsilon(1e-12));
  CHECK(b.r == doctest::Approx(1.9172246678883118).epsilon(1e-12));
  CHECK(b.i == doctest::Approx(3.41).epsilon(0.01));
  CHECK(b.a == doctest::Approx(1.38).epsilon(0.01));
}

TEST_CASE("asymptomatic and symptomatic bounds keep their exact ratio") {
  const ModelParams p = presets::example1().model;
  const PersistenceBounds b = compute_persistence_bounds(p);
  const double expected = (p.delta_i + p.mu + p.d) / p.alpha;
  CHECK(b.a / b.i == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("persistence bounds vanish as the index approaches one") {
  ModelParams p = presets::example1().model;
  const double r0s = compute_r0s(p);
  // The index scales as the cube root of recruitment.
  const double lambda_crit = p.lambda / (r0s * r0s * r0s);
  p.lambda = lambda_crit * (1.0 + 1e-8);
  REQUIRE(compute_r0s(p) > 1.0);
  const PersistenceBounds b = compute_persistence_bounds(p);
  CHECK(b.s > 0.0);
  CHECK(b.a > 0.0);
  CHECK(b.i > 0.0);
  CHECK(b.r > 0.0);
  CHECK(b.s < 1e-4);
  CHECK(b.a < 1e-4);
  CHECK(b.i < 1e-4);
  CHECK(b.r < 1e-4);
}

TEST_CASE("persistence bounds reject a subcritical index") {
  const ModelParams p = presets::example4().model;
  REQUIRE(compute_r0s(p) < 1.0);
  CHECK_THROWS_AS(compute_persistence_bounds(p), std::domain_error);
}

TEST_CASE("reproduction index decreases in every damping rate") {
  const ModelParams base = presets::example1().model;
  const double r0 = compute_r0s(base);

  auto bumped = [&](auto&& edit) {
    ModelParams p = base;
    edit(p);
    return compute_r0s(p);
  };

  CHECK(bumped([](ModelParams& p) { p.mu *= 2.0; }) < r0);
  CHECK(bumped([](ModelParams& p) { p.gamma *= 2.0; }) < r0);
  CHECK(bumped([](ModelParams& p) { p.delta_a *= 2.0; }) < r0);
  CHECK(bumped([](ModelParams& p) { p.delta_i *= 2.0; }) < r0);
  CHECK(bumped([](ModelParams& p) { p.d = p.d * 2.0 + 0.1; }) < r0);
  for (int k = 0; k < 4; ++k) {
    CHECK(bumped([k](ModelParams& p) { p.sigma[k] *= 2.0; }) < r0);
  }
}

TEST_CASE("full report attaches bounds only above the critical index") {
  const ThresholdReport endemic = compute_thresholds(presets::example1().model);
  CHECK(endemic.r0s > 1.0);
  REQUIRE(endemic.persistence_bounds.has_value());
  CHECK(endemic.persistence_bounds->i ==
        doctest::Approx(3.4105001936671564).epsilon(1e-12));
  CHECK(endemic.beta_min == 0.01);
  CHECK(endemic.beta_max == 0.01);

  const ThresholdReport dying = compute_thresholds(presets::example4().model);
  CHECK(dying.r0s < 1.0);
  CHECK(!dying.persistence_bounds.has_value());
  CHECK(dying.extinction_index < 0.0);
}

TEST_CASE("halting constant takes the smaller damping branch") {
  const ModelParams p = presets::example4().model;
  const ThresholdReport rep = compute_thresholds(p);
  const double branch_a = p.mu + p.delta_a + 0.5 * p.sigma[1] * p.sigma[1];
  const double branch_i =
      p.mu + p.delta_i + p.d + 0.5 * p.sigma[2] * p.sigma[2];
  CHECK(rep.h_const == doctest::Approx(std::min(branch_a, branch_i)).epsilon(1e-15));
}

}  // TEST_SUITE
