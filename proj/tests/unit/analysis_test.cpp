#include <doctest.h>

#include <sairs/analysis.hpp>
#include <sairs/presets.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

using namespace sairs;

namespace {

Trajectory synthetic(const TimeGrid& grid, auto&& state_of_t) {
  Trajectory traj;
  traj.grid = grid;
  const std::size_t n = grid.n_steps();
  traj.states.reserve(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    traj.states.push_back(state_of_t(grid.time_at(k)));
  }
  return traj;
}

}  // namespace

TEST_SUITE("analysis") {

TEST_CASE("time average of a constant path is the constant") {
  const TimeGrid grid{0.0, 1.0, 0.1};
  const Trajectory traj =
      synthetic(grid, [](double) { return State{7.0, 3.0, 2.0, 1.0}; });
  CHECK(time_average(traj, Compartment::S) == doctest::Approx(7.0).epsilon(1e-12));
  CHECK(time_average(traj, Compartment::A) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(time_average(traj, Compartment::I) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(time_average(traj, Compartment::R) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("time average is linear") {
  const TimeGrid grid{0.0, 2.0, 0.01};
  const Trajectory a =
      synthetic(grid, [](double t) { return State{t, 2.0 * t, 0.0, 1.0}; });
  const Trajectory b = synthetic(
      grid, [](double t) { return State{1.0 + t * t, 3.0, t, 0.5}; });
  Trajectory sum = a;
  for (std::size_t k = 0; k < sum.states.size(); ++k) {
    sum.states[k].s += b.states[k].s;
    sum.states[k].a += b.states[k].a;
    sum.states[k].i += b.states[k].i;
    sum.states[k].r += b.states[k].r;
  }
  for (const Compartment c :
       {Compartment::S, Compartment::A, Compartment::I, Compartment::R}) {
    const double lhs = time_average(sum, c);
    const double rhs = time_average(a, c) + time_average(b, c);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("compartment names") {
  CHECK(std::string(compartment_name(Compartment::S)) == "S");
  CHECK(std::string(compartment_name(Compartment::A)) == "A");
  CHECK(std::string(compartment_name(Compartment::I)) == "I");
  CHECK(std::string(compartment_name(Compartment::R)) == "R");
}

TEST_CASE("exact exponential decay fits its own slope") {
  const TimeGrid grid{0.0, 10.0, 0.01};
  const Trajectory traj = synthetic(grid, [](double t) {
    const double v = 0.5 * std::exp(-0.3 * t);
    return State{100.0, v, v, 0.0};
  });
  const ModelParams p = presets::example4().model;
  const ExtinctionReport rep = extinction_check(traj, p, 0.0, 10.0);
  CHECK(rep.slope_defined);
  CHECK(!rep.truncated_at_zero);
  CHECK(rep.log_slope == doctest::Approx(-0.3).epsilon(1e-6));
  CHECK(rep.terminal_infected ==
        doctest::Approx(std::exp(-3.0)).epsilon(1e-12));
  CHECK(rep.s_terminal == 100.0);
  CHECK(rep.extinction_index == doctest::Approx(-0.32813839999999994));
}

TEST_CASE("a flat infected pressure fits a zero slope") {
  const TimeGrid grid{0.0, 5.0, 0.05};
  const Trajectory traj =
      synthetic(grid, [](double) { return State{10.0, 1.0, 2.0, 0.0}; });
  const ExtinctionReport rep =
      extinction_check(traj, presets::example4().model, 0.0, 5.0);
  CHECK(rep.slope_defined);
  CHECK(std::abs(rep.log_slope) <= 1e-12);
}

TEST_CASE("the fit honors its window") {
  // Flat until t = 5, exponential decay afterwards; fitting the tail alone
  // recovers the tail slope.
  const TimeGrid grid{0.0, 10.0, 0.01};
  const Trajectory traj = synthetic(grid, [](double t) {
    const double v = t < 5.0 ? 1.0 : std::exp(-0.3 * (t - 5.0));
    return State{10.0, 0.5 * v, 0.5 * v, 0.0};
  });
  const ExtinctionReport rep =
      extinction_check(traj, presets::example4().model, 5.0, 10.0);
  CHECK(rep.log_slope == doctest::Approx(-0.3).epsilon(1e-6));
  CHECK_THROWS_AS(
      extinction_check(traj, presets::example4().model, 6.0, 5.0),
      std::invalid_argument);
}

TEST_CASE("hitting zero truncates the fit and is flagged") {
  const TimeGrid grid{0.0, 10.0, 0.1};
  const Trajectory traj = synthetic(grid, [](double t) {
    const double v = t < 7.0 ? std::exp(-0.3 * t) : 0.0;
    return State{10.0, 0.5 * v, 0.5 * v, 0.0};
  });
  const ExtinctionReport rep =
      extinction_check(traj, presets::example4().model, 0.0, 10.0);
  CHECK(rep.truncated_at_zero);
  CHECK(rep.slope_defined);
  CHECK(rep.log_slope == doctest::Approx(-0.3).epsilon(1e-6));

  // Zero from the very first window sample: no slope can be fitted.
  const Trajectory dead =
      synthetic(grid, [](double) { return State{10.0, 0.0, 0.0, 0.0}; });
  const ExtinctionReport rep2 =
      extinction_check(dead, presets::example4().model, 0.0, 10.0);
  CHECK(!rep2.slope_defined);
  CHECK(rep2.truncated_at_zero);
}

TEST_CASE("extinction ensemble counting rules") {
  std::vector<ExtinctionReport> reports(4);
  reports[0].slope_defined = true;
  reports[0].log_slope = -0.2;
  reports[0].terminal_infected = 0.5;
  reports[1].slope_defined = true;
  reports[1].log_slope = 0.1;  // growing: not decaying
  reports[1].terminal_infected = 2.0;
  reports[2].slope_defined = false;
  reports[2].truncated_at_zero = true;  // died immediately: decaying
  reports[2].terminal_infected = 0.0;
  reports[3].slope_defined = true;
  reports[3].log_slope = 0.0;  // flat counts as non-increasing
  reports[3].terminal_infected = 1.0;  // not strictly below threshold 1
  reports[0].s_terminal = 10.0;
  reports[1].s_terminal = 20.0;
  reports[2].s_terminal = 30.0;
  reports[3].s_terminal = 40.0;

  const ExtinctionEnsembleSummary sum = summarize_extinction(reports, 1.0);
  CHECK(sum.n_traj == 4);
  CHECK(sum.n_decaying == 3);
  CHECK(sum.n_terminal_below == 2);
  CHECK(sum.terminal_threshold == 1.0);
  CHECK(sum.mean_terminal_s == doctest::Approx(25.0).epsilon(1e-15));
}

TEST_CASE("histogram bins partition the retained samples") {
  // States S = 0, 1, ..., 100 on integer times.
  const TimeGrid grid{0.0, 100.0, 1.0};
  const Trajectory traj =
      synthetic(grid, [](double t) { return State{t, 0.0, 0.0, 0.0}; });
  const Histogram h = stationary_histogram(traj, 0.0, 10, Compartment::S);
  CHECK(h.n_samples == 101);
  CHECK(!h.degenerate);
  REQUIRE(h.edges.size() == 11);
  REQUIRE(h.masses.size() == 10);
  CHECK(h.edges.front() == 0.0);
  CHECK(h.edges.back() == 100.0);
  const double total = std::accumulate(h.masses.begin(), h.masses.end(), 0.0);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  // 10 samples per interior bin, 11 in the last (the max joins bin 9).
  CHECK(h.masses[0] == doctest::Approx(10.0 / 101.0).epsilon(1e-12));
  CHECK(h.masses[9] == doctest::Approx(11.0 / 101.0).epsilon(1e-12));
}

TEST_CASE("burn-in removes the leading samples") {
  const TimeGrid grid{0.0, 100.0, 1.0};
  const Trajectory traj =
      synthetic(grid, [](double t) { return State{t, 0.0, 0.0, 0.0}; });
  const Histogram h = stationary_histogram(traj, 50.5, 5, Compartment::S);
  CHECK(h.n_samples == 50);  // t = 51 .. 100
  CHECK(h.edges.front() == 51.0);
  CHECK(h.edges.back() == 100.0);
  CHECK(h.burn_in == 50.5);
  CHECK_THROWS_AS(stationary_histogram(traj, 1000.0, 5, Compartment::S),
                  std::invalid_argument);
  CHECK_THROWS_AS(stationary_histogram(traj, 0.0, 0, Compartment::S),
                  std::invalid_argument);
}

TEST_CASE("a constant series degenerates to a single unit bin") {
  const TimeGrid grid{0.0, 10.0, 1.0};
  const Trajectory traj =
      synthetic(grid, [](double) { return State{0.0, 0.0, 42.0, 0.0}; });
  const Histogram h = stationary_histogram(traj, 0.0, 8, Compartment::I);
  CHECK(h.degenerate);
  REQUIRE(h.masses.size() == 1);
  CHECK(h.masses[0] == 1.0);
  CHECK(h.edges.front() < 42.0);
  CHECK(h.edges.back() > 42.0);
}

TEST_CASE("histogram ignores sample order") {
  const TimeGrid grid{0.0, 20.0, 1.0};
  std::vector<double> values(21);
  std::iota(values.begin(), values.end(), 0.0);
  Trajectory fwd;
  fwd.grid = grid;
  Trajectory rev;
  rev.grid = grid;
  for (std::size_t k = 0; k < values.size(); ++k) {
    fwd.states.push_back(State{0.0, values[k], 0.0, 0.0});
    rev.states.push_back(State{0.0, values[values.size() - 1 - k], 0.0, 0.0});
  }
  const Histogram a = stationary_histogram(fwd, 0.0, 7, Compartment::A);
  const Histogram b = stationary_histogram(rev, 0.0, 7, Compartment::A);
  CHECK(a.edges == b.edges);
  CHECK(a.masses == b.masses);
}

TEST_CASE("distance between identical histograms is zero") {
  const TimeGrid grid{0.0, 100.0, 1.0};
  const Trajectory traj = synthetic(grid, [](double t) {
    return State{0.0, 0.0, 50.0 + 30.0 * std::sin(t), 0.0};
  });
  const Histogram h = stationary_histogram(traj, 0.0, 20, Compartment::I);
  CHECK(histogram_distance(h, h) == 0.0);
}

TEST_CASE("distance between disjoint histograms is one") {
  Histogram a;
  a.component = Compartment::I;
  a.edges = {0.0, 1.0, 2.0};
  a.masses = {0.5, 0.5};
  Histogram b;
  b.component = Compartment::I;
  b.edges = {5.0, 6.0, 7.0};
  b.masses = {0.25, 0.75};
  CHECK(histogram_distance(a, b) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("uniform versus half-width uniform has distance one half") {
  Histogram a;
  a.component = Compartment::I;
  a.edges = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  a.masses = std::vector<double>(10, 0.1);
  Histogram b;
  b.component = Compartment::I;
  b.edges = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5};
  b.masses = std::vector<double>(5, 0.2);
  CHECK(histogram_distance(a, b) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("distance rejects mismatched components") {
  Histogram a;
  a.component = Compartment::I;
  a.edges = {0.0, 1.0};
  a.masses = {1.0};
  Histogram b = a;
  b.component = Compartment::A;
  CHECK_THROWS_AS(histogram_distance(a, b), std::domain_error);
}

TEST_CASE("persistence verdicts come from strict excess") {
  const ModelParams p = presets::example1().model;
  const PersistenceBounds bounds = compute_persistence_bounds(p);

  EnsembleSummary ens;
  ens.grid = TimeGrid{0.0, 500.0, 0.002};
  ens.n_traj = 2;
  ens.time_avg = {Vec4{bounds.s * 1.1, bounds.a * 1.1, bounds.i * 1.1,
                       bounds.r * 1.1},
                  Vec4{bounds.s * 1.3, bounds.a * 1.3, bounds.i * 1.3,
                       bounds.r * 1.3}};
  const PersistenceReport above = persistence_check(ens, p);
  CHECK(above.all_satisfied());
  CHECK(above.time_averages[2] ==
        doctest::Approx(bounds.i * 1.2).epsilon(1e-12));
  CHECK(above.horizon == doctest::Approx(500.0));
  CHECK(above.n_traj == 2);

  // Averages exactly at the bounds must not count as persistent.
  ens.time_avg = {Vec4{bounds.s, bounds.a, bounds.i, bounds.r},
                  Vec4{bounds.s, bounds.a, bounds.i, bounds.r}};
  const PersistenceReport at = persistence_check(ens, p);
  CHECK(!at.satisfied[0]);
  CHECK(!at.satisfied[1]);
  CHECK(!at.satisfied[2]);
  CHECK(!at.satisfied[3]);
  CHECK(!at.all_satisfied());
}

TEST_CASE("persistence verdicts ignore trajectory order") {
  const ModelParams p = presets::example1().model;
  const PersistenceBounds bounds = compute_persistence_bounds(p);
  EnsembleSummary ens;
  ens.grid = TimeGrid{0.0, 500.0, 0.002};
  ens.n_traj = 3;
  ens.time_avg = {Vec4{bounds.s * 2.0, bounds.a * 2.0, bounds.i * 2.0, bounds.r * 2.0},
                  Vec4{bounds.s * 1.5, bounds.a * 1.5, bounds.i * 1.5, bounds.r * 1.5},
                  Vec4{bounds.s * 1.2, bounds.a * 1.2, bounds.i * 1.2, bounds.r * 1.2}};
  const PersistenceReport fwd = persistence_check(ens, p);
  std::reverse(ens.time_avg.begin(), ens.time_avg.end());
  const PersistenceReport rev = persistence_check(ens, p);
  CHECK(fwd.satisfied == rev.satisfied);
  for (int k = 0; k < 4; ++k) {
    CHECK(fwd.time_averages[static_cast<size_t>(k)] ==
          doctest::Approx(rev.time_averages[static_cast<size_t>(k)]).epsilon(1e-12));
  }
}

TEST_CASE("persistence check rejects a subcritical setup") {
  EnsembleSummary ens;
  ens.grid = TimeGrid{0.0, 200.0, 0.002};
  ens.n_traj = 1;
  ens.time_avg = {Vec4{1.0, 1.0, 1.0, 1.0}};
  CHECK_THROWS_AS(persistence_check(ens, presets::example4().model),
                  std::domain_error);
}

}  // TEST_SUITE
