#include <doctest.h>

#include <sairs/config.hpp>
#include <sairs/presets.hpp>

#include <filesystem>
#include <stdexcept>
#include <string>

using namespace sairs;

#ifndef SAIRS_CONFIG_DIR
#error "SAIRS_CONFIG_DIR must point at the bundled example configurations"
#endif

namespace {

const char* kMinimal = R"({
  "model": {
    "lambda": 30, "beta_a": 0.01, "beta_i": 0.01, "b": 0.2,
    "mu": 2e-05, "gamma": 0.5, "delta_a": 0.2, "delta_i": 0.2,
    "alpha": 0.5, "d": 0.0027, "sigma": [0.05, 0.05, 0.05, 0.05]
  },
  "init": {"S": 1500, "A": 5, "I": 6, "R": 25},
  "grid": {"t_end": 500}
})";

std::string with_patch(const std::string& needle, const std::string& patch) {
  std::string text = kMinimal;
  const auto pos = text.find(needle);
  REQUIRE(pos != std::string::npos);
  text.replace(pos, needle.size(), patch);
  return text;
}

}  // namespace

TEST_SUITE("config") {

TEST_CASE("a minimal document parses with documented defaults") {
  const RunConfig cfg = parse_config(kMinimal);
  CHECK(cfg.model.lambda == 30.0);
  CHECK(cfg.model.mu == 2e-05);
  CHECK(cfg.init.s == 1500.0);
  CHECK(cfg.grid.t0 == 0.0);
  CHECK(cfg.grid.t_end == 500.0);
  CHECK(cfg.grid.dt == 0.002);
  CHECK(cfg.ensemble.n_traj == 100);
  CHECK(cfg.ensemble.master_seed == 1);
  CHECK(cfg.ensemble.n_threads == 0);
  CHECK(cfg.analysis.n_bins == 50);
  CHECK(!cfg.analysis.burn_in.has_value());
  CHECK(cfg.analysis.histogram_component == Compartment::I);
  CHECK(cfg.control.sweep.max_iter == 100);
  CHECK(cfg.control.sweep.tol == 1e-4);
  CHECK(cfg.control.sweep.omega == 0.5);
  CHECK(cfg.control.sweep.mode == ProjectionMode::hamiltonian);
  CHECK(!cfg.control.sweep.stochastic_nominal);
  CHECK(cfg.output_dir == "out");
  CHECK(cfg.burn_in() == doctest::Approx(100.0));          // 20% of 500
  CHECK(cfg.fit_window().first == doctest::Approx(250.0)); // last half
  CHECK(cfg.fit_window().second == doctest::Approx(500.0));
}

TEST_CASE("unknown keys are rejected with their full path") {
  const std::string top = with_patch("\"grid\"", "\"grd\"");
  try {
    parse_config(top);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("grd") != std::string::npos);
  }

  std::string nested = kMinimal;
  nested.insert(nested.rfind('}'), R"(, "analysis": {"n_bin": 10})");
  try {
    parse_config(nested);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("analysis.n_bin") != std::string::npos);
  }
}

TEST_CASE("missing required keys name the key path") {
  const std::string no_mu = with_patch("\"mu\": 2e-05, ", "");
  try {
    parse_config(no_mu);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("model.mu") != std::string::npos);
  }

  const std::string no_t_end = with_patch("\"grid\": {\"t_end\": 500}",
                                          "\"grid\": {\"dt\": 0.01}");
  CHECK_THROWS_AS(parse_config(no_t_end), ConfigError);
}

TEST_CASE("semantic validation runs at parse time") {
  const std::string zero_mu = with_patch("\"mu\": 2e-05", "\"mu\": 0");
  try {
    parse_config(zero_mu);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("mu") != std::string::npos);
  }

  const std::string bad_sigma =
      with_patch("[0.05, 0.05, 0.05, 0.05]", "[0.05, 0.05, 0.05]");
  CHECK_THROWS_AS(parse_config(bad_sigma), ConfigError);

  const std::string bad_type = with_patch("\"lambda\": 30", "\"lambda\": \"x\"");
  CHECK_THROWS_AS(parse_config(bad_type), ConfigError);

  const std::string not_json = "not json at all";
  CHECK_THROWS_AS(parse_config(not_json), ConfigError);
}

TEST_CASE("analysis section round trip and checks") {
  std::string text = kMinimal;
  text.insert(text.rfind('}'),
              R"(, "analysis": {"burn_in": 100, "n_bins": 20,
                  "fit_window": [250, 500], "histogram_component": "A"})");
  const RunConfig cfg = parse_config(text);
  CHECK(cfg.analysis.burn_in == 100.0);
  CHECK(cfg.analysis.n_bins == 20);
  REQUIRE(cfg.analysis.fit_window.has_value());
  CHECK(cfg.analysis.fit_window->first == 250.0);
  CHECK(cfg.analysis.fit_window->second == 500.0);
  CHECK(cfg.analysis.histogram_component == Compartment::A);
  CHECK(cfg.burn_in() == 100.0);

  std::string bad_window = kMinimal;
  bad_window.insert(bad_window.rfind('}'),
                    R"(, "analysis": {"fit_window": [500, 250]})");
  CHECK_THROWS_AS(parse_config(bad_window), ConfigError);

  std::string deep_burn = kMinimal;
  deep_burn.insert(deep_burn.rfind('}'),
                   R"(, "analysis": {"burn_in": 500})");
  CHECK_THROWS_AS(parse_config(deep_burn), ConfigError);

  std::string bad_component = kMinimal;
  bad_component.insert(bad_component.rfind('}'),
                       R"(, "analysis": {"histogram_component": "X"})");
  CHECK_THROWS_AS(parse_config(bad_component), ConfigError);
}

TEST_CASE("control section round trip") {
  std::string text = kMinimal;
  text.insert(text.rfind('}'), R"(, "control": {
    "weights": {"p2": 1, "p3": 1, "q1": 200000, "q2": 0.5},
    "sweep": {"max_iter": 50, "tol": 1e-05, "omega": 0.3, "mode": "paper",
              "forward": "frozen_noise", "forward_seed": 11}})");
  const RunConfig cfg = parse_config(text);
  CHECK(cfg.control.weights.p1 == 0.0);
  CHECK(cfg.control.weights.p2 == 1.0);
  CHECK(cfg.control.weights.q1 == 200000.0);
  CHECK(cfg.control.weights.q2 == 0.5);
  CHECK(cfg.control.sweep.max_iter == 50);
  CHECK(cfg.control.sweep.tol == 1e-05);
  CHECK(cfg.control.sweep.omega == 0.3);
  CHECK(cfg.control.sweep.mode == ProjectionMode::paper);
  CHECK(cfg.control.sweep.stochastic_nominal);
  CHECK(cfg.control.sweep.nominal_seed == 11);

  std::string bad_mode = text;
  const auto pos = bad_mode.find("\"paper\"");
  bad_mode.replace(pos, 7, "\"exact\"");
  CHECK_THROWS_AS(parse_config(bad_mode), ConfigError);
}

TEST_CASE("compartment names round trip") {
  CHECK(compartment_from_name("S") == Compartment::S);
  CHECK(compartment_from_name("A") == Compartment::A);
  CHECK(compartment_from_name("I") == Compartment::I);
  CHECK(compartment_from_name("R") == Compartment::R);
  CHECK_THROWS_AS(compartment_from_name("Q"), std::invalid_argument);
}

TEST_CASE("loading a missing file fails cleanly") {
  CHECK_THROWS_AS(load_config("/nonexistent/path/config.json"), ConfigError);
}

TEST_CASE("presets are valid and addressable by name") {
  const auto names = presets::names();
  REQUIRE(names.size() == 6);
  for (const auto& name : names) {
    const RunConfig cfg = presets::by_name(name);
    CHECK_NOTHROW(cfg.validate());
  }
  CHECK_THROWS_AS(presets::by_name("example0"), std::invalid_argument);
}

TEST_CASE("bundled configuration files mirror the presets exactly") {
  const std::filesystem::path dir = SAIRS_CONFIG_DIR;
  CHECK(load_config(dir / "example1.json") == presets::example1());
  CHECK(load_config(dir / "example2.json") == presets::example2());
  CHECK(load_config(dir / "example3.json") == presets::example3());
  CHECK(load_config(dir / "example4.json") == presets::example4());
  CHECK(load_config(dir / "example5.json") == presets::example5());
  CHECK(load_config(dir / "example6.json") == presets::example6());
}

}  // TEST_SUITE
