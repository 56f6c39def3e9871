// Copyright 2026 The qcs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "qcs/config.hpp"
#include "qcs/experiment.hpp"
#include "qcs/noise.hpp"
#include "qcs/state.hpp"

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string experiment_csv(const qcs::ExperimentResult& result) {
  std::ostringstream ss;
  qcs::write_experiment_csv(ss, result.rows);
  return ss.str();
}

std::string sweep_csv(qcs::SweepAxis axis, const std::vector<qcs::SweepRow>& rows) {
  std::ostringstream ss;
  qcs::write_sweep_csv(ss, axis, rows);
  return ss.str();
}

std::string first_line(const std::string& text) { return text.substr(0, text.find('\n')); }

double rmse(const std::vector<qcs::SweepRow>& rows, double value) {
  double acc = 0.0;
  int m = 0;
  for (const auto& r : rows) {
    if (r.axis_value == value) {
      acc += r.error * r.error;
      ++m;
    }
  }
  REQUIRE(m > 0);
  return std::sqrt(acc / m);
}

}  // namespace

TEST_CASE("noise specs parse and print") {
  auto none = qcs::NoiseSpec::parse("none");
  CHECK(none.kind == qcs::NoiseSpec::Kind::None);
  CHECK(qcs::NoiseSpec::parse("").kind == qcs::NoiseSpec::Kind::None);
  CHECK(none.to_string() == "none");

  auto fixed = qcs::NoiseSpec::parse("fixed:0.1,0.2");
  CHECK(fixed.kind == qcs::NoiseSpec::Kind::Fixed);
  REQUIRE(fixed.phases.size() == 2);
  CHECK(fixed.phases[0] == 0.1);
  CHECK(fixed.phases[1] == 0.2);
  CHECK(fixed.to_string() == "fixed:0.1,0.2");

  auto gauss = qcs::NoiseSpec::parse("gauss:0.3");
  CHECK(gauss.kind == qcs::NoiseSpec::Kind::Gauss);
  CHECK(gauss.sigma == 0.3);
  CHECK(gauss.to_string() == "gauss:0.3");

  CHECK_THROWS_AS(qcs::NoiseSpec::parse("fixed:"), qcs::config_error);
  CHECK_THROWS_AS(qcs::NoiseSpec::parse("gauss:-1"), qcs::config_error);
  CHECK_THROWS_AS(qcs::NoiseSpec::parse("pink:1"), qcs::config_error);
}

TEST_CASE("double lists parse strictly") {
  auto v = qcs::parse_double_list("1.0,2.5,-3", "offsets");
  REQUIRE(v.size() == 3);
  CHECK(v[0] == 1.0);
  CHECK(v[1] == 2.5);
  CHECK(v[2] == -3.0);
  CHECK(qcs::parse_double_list("", "offsets").empty());
  CHECK_THROWS_AS(qcs::parse_double_list("1,,2", "offsets"), qcs::config_error);
  CHECK_THROWS_AS(qcs::parse_double_list("abc", "offsets"), qcs::config_error);
}

TEST_CASE("config JSON loads every field and rejects junk") {
  const std::string text = R"({
    "parties": 4, "sets": 5000, "omega": 1.5, "omega2": 0.7, "freq_split": 0.25,
    "offsets": [0, 0.5, 1, 1.5], "phase_noise": "gauss:0.1",
    "basis_misalign": [0, 0.01, 0, 0], "seed": 42, "window": [0, 5.0],
    "out": "x.csv", "format": "records"
  })";
  auto loaded = qcs::load_config_json(text);
  const qcs::ExperimentConfig& cfg = loaded.config;
  CHECK(cfg.parties == 4);
  CHECK(cfg.sets == 5000);
  CHECK(cfg.omega == 1.5);
  REQUIRE(cfg.omega2.has_value());
  CHECK(*cfg.omega2 == 0.7);
  CHECK(cfg.freq_split == 0.25);
  REQUIRE(cfg.offsets.size() == 4);
  CHECK(cfg.offsets[3] == 1.5);
  CHECK(cfg.phase_noise.kind == qcs::NoiseSpec::Kind::Gauss);
  CHECK(cfg.phase_noise.sigma == 0.1);
  REQUIRE(cfg.basis_misalign.size() == 4);
  CHECK(cfg.basis_misalign[1] == 0.01);
  CHECK(cfg.seed == 42);
  REQUIRE(cfg.window.has_value());
  CHECK(cfg.window->lo == 0.0);
  CHECK(cfg.window->hi == 5.0);
  REQUIRE(loaded.out.has_value());
  CHECK(*loaded.out == "x.csv");
  REQUIRE(loaded.format.has_value());
  CHECK(*loaded.format == "records");
  CHECK_NOTHROW(cfg.validate());

  SUBCASE("absent fields keep defaults") {
    auto empty = qcs::load_config_json("{}");
    CHECK(empty.config.parties == 2);
    CHECK(empty.config.sets == 1000);
    CHECK(empty.config.omega == 1.0);
    CHECK_FALSE(empty.config.omega2.has_value());
    CHECK(empty.config.offsets.empty());
    CHECK(empty.config.phase_noise.kind == qcs::NoiseSpec::Kind::None);
    CHECK(empty.config.seed == 0);
    CHECK_FALSE(empty.config.window.has_value());
    CHECK_FALSE(empty.out.has_value());
    CHECK_FALSE(empty.format.has_value());
  }

  SUBCASE("unknown keys are named in the error") {
    try {
      qcs::load_config_json(R"({"partiez": 3})");
      FAIL("expected config_error");
    } catch (const qcs::config_error& e) {
      CHECK(std::string(e.what()).find("partiez") != std::string::npos);
    }
  }

  SUBCASE("malformed input is rejected") {
    CHECK_THROWS_AS(qcs::load_config_json(R"({"parties": "four"})"), qcs::config_error);
    CHECK_THROWS_AS(qcs::load_config_json(R"({"window": [1]})"), qcs::config_error);
    CHECK_THROWS_AS(qcs::load_config_json("[1,2]"), qcs::config_error);
    CHECK_THROWS_AS(qcs::load_config_json("{nope"), qcs::config_error);
  }
}

TEST_CASE("config validation names every offending field at once") {
  qcs::ExperimentConfig cfg;
  cfg.parties = 1;
  cfg.omega = -1.0;
  cfg.offsets = {1.0, 2.0, 3.0};
  try {
    cfg.validate();
    FAIL("expected config_error");
  } catch (const qcs::config_error& e) {
    const std::string msg = e.what();
    CHECK(msg.find("parties") != std::string::npos);
    CHECK(msg.find("omega") != std::string::npos);
    CHECK(msg.find("offsets") != std::string::npos);
  }

  SUBCASE("two-frequency constraints") {
    qcs::ExperimentConfig c2;
    c2.omega2 = c2.omega;
    CHECK_THROWS_AS(c2.validate(), qcs::config_error);
    c2.omega2 = 0.7;
    c2.freq_split = 1.5;
    CHECK_THROWS_AS(c2.validate(), qcs::config_error);
    c2.freq_split = 0.5;
    CHECK_NOTHROW(c2.validate());
  }

  SUBCASE("noise arity and window bounds") {
    qcs::ExperimentConfig c3;
    c3.phase_noise = qcs::NoiseSpec::parse("fixed:0.1");
    CHECK_THROWS_AS(c3.validate(), qcs::config_error);  // 2 parties, 1 phase
    c3.phase_noise = qcs::NoiseSpec::parse("fixed:0.1,0");
    CHECK_NOTHROW(c3.validate());
    c3.window = qcs::Window{0.0, 100.0};
    CHECK_THROWS_AS(c3.validate(), qcs::config_error);
  }
}

TEST_CASE("frequency tags interleave to the requested split") {
  qcs::ExperimentConfig cfg;
  CHECK(std::string(cfg.freq_tag_of_set(0)) == "w1");
  CHECK(std::string(cfg.freq_tag_of_set(12345)) == "w1");

  cfg.omega2 = 0.7;
  SUBCASE("split 0 and 1 are degenerate") {
    cfg.freq_split = 0.0;
    for (int k = 0; k < 50; ++k) CHECK(std::string(cfg.freq_tag_of_set(k)) == "w1");
    cfg.freq_split = 1.0;
    for (int k = 0; k < 50; ++k) CHECK(std::string(cfg.freq_tag_of_set(k)) == "w2");
  }

  SUBCASE("split 1/2 alternates starting at w1") {
    cfg.freq_split = 0.5;
    for (int k = 0; k < 20; ++k) {
      CHECK(std::string(cfg.freq_tag_of_set(k)) == (k % 2 == 0 ? "w1" : "w2"));
    }
  }

  SUBCASE("split 1/4 holds on every prefix") {
    cfg.freq_split = 0.25;
    int w2 = 0;
    for (int k = 0; k < 1000; ++k) {
      if (std::string(cfg.freq_tag_of_set(k)) == "w2") ++w2;
      CHECK(std::abs(w2 - 0.25 * (k + 1)) <= 1.0);
    }
    CHECK(w2 == 250);
  }

  SUBCASE("effective window defaults to one period of the slowest qubit") {
    cfg.freq_split = 0.5;
    auto w = cfg.effective_window();
    CHECK(w.lo == 0.0);
    CHECK(w.hi == doctest::Approx(2.0 * kPi / 0.7).epsilon(1e-15));
    qcs::ExperimentConfig single;
    CHECK(single.effective_window().hi == doctest::Approx(2.0 * kPi).epsilon(1e-15));
  }
}

TEST_CASE("noise application rotates amplitudes as configured") {
  qcs::ExperimentConfig cfg;
  cfg.parties = 3;

  SUBCASE("fixed phases land on the matching qubits") {
    cfg.phase_noise = qcs::NoiseSpec::parse("fixed:0,0.4,-0.9");
    auto set = qcs::make_qubit_set(cfg, 0);
    REQUIRE(set.phases.size() == 3);
    CHECK(set.phases[1] == 0.4);
    auto s = qcs::state_of(set);
    const double a = 1.0 / std::sqrt(3.0);
    CHECK(std::abs(s.exc_amps[1] - std::polar(a, 0.4)) < 1e-15);
    CHECK(std::abs(s.exc_amps[2] - std::polar(a, -0.9)) < 1e-15);
    CHECK(std::abs(s.exc_amps[0] - qcs::Complex(a, 0.0)) < 1e-15);
  }

  SUBCASE("gaussian draws are deterministic per (seed, set)") {
    cfg.phase_noise = qcs::NoiseSpec::parse("gauss:0.2");
    cfg.seed = 77;
    auto s1 = qcs::make_qubit_set(cfg, 5);
    auto s2 = qcs::make_qubit_set(cfg, 5);
    CHECK(s1.phases == s2.phases);
    auto s3 = qcs::make_qubit_set(cfg, 6);
    CHECK(s1.phases != s3.phases);
    bool any = false;
    for (double p : s1.phases) any = any || p != 0.0;
    CHECK(any);
  }

  SUBCASE("zero-width gaussian noise is exactly quiet") {
    cfg.phase_noise = qcs::NoiseSpec::parse("gauss:0");
    auto set = qcs::make_qubit_set(cfg, 3);
    for (double p : set.phases) CHECK(p == 0.0);
  }

  SUBCASE("basis misalignment folds in as extra phase") {
    cfg.basis_misalign = {0.0, 0.2, 0.0};
    auto set = qcs::make_qubit_set(cfg, 0);
    CHECK(set.phases[1] == 0.2);
    CHECK(cfg.has_basis_misalign());
  }

  SUBCASE("clean configs take the exact fast path") {
    auto s = qcs::apply_noise(cfg, 0);
    auto w = qcs::w_state(3);
    CHECK(s.vacuum_amp == w.vacuum_amp);
    for (int k = 0; k < 3; ++k) CHECK(s.exc_amps[k] == w.exc_amps[k]);
  }
}

TEST_CASE("run_experiment is deterministic and shaped by the config") {
  qcs::ExperimentConfig cfg;
  cfg.parties = 3;
  cfg.sets = 500;
  cfg.offsets = {0.0, 0.8, 1.6};
  cfg.seed = 7;

  auto r1 = qcs::run_experiment(cfg);
  auto r2 = qcs::run_experiment(cfg);
  REQUIRE(r1.rows.size() == 2);
  CHECK(r1.rows[0].receiver == 1);
  CHECK(r1.rows[1].receiver == 2);
  CHECK(r1.rows[0].true_delta == 0.8);
  CHECK(r1.rows[1].true_delta == 1.6);

  const std::string csv1 = experiment_csv(r1);
  CHECK(csv1 == experiment_csv(r2));
  CHECK(first_line(csv1) ==
        "receiver,true_delta,c_hat,principal_delta,delta_candidates,resolved_delta,"
        "std_error,n_sets,flags");

  std::ostringstream b1, b2;
  qcs::write_bulletin(b1, r1.bulletin);
  qcs::write_bulletin(b2, r2.bulletin);
  CHECK(b1.str() == b2.str());

  SUBCASE("zero sets reports insufficient data per receiver") {
    cfg.sets = 0;
    auto r = qcs::run_experiment(cfg);
    REQUIRE(r.rows.size() == 2);
    for (const auto& row : r.rows) {
      CHECK(row.report.has_flag(qcs::flag::kInsufficientData));
      CHECK(std::isinf(row.report.std_error));
    }
  }

  SUBCASE("basis misalignment flags every row") {
    cfg.basis_misalign = {0.0, 0.05, 0.0};
    auto r = qcs::run_experiment(cfg);
    for (const auto& row : r.rows) {
      CHECK(row.report.has_flag(qcs::flag::kBasisMisalignEquivPhase));
    }
  }

  SUBCASE("a window narrows the candidate list") {
    cfg.parties = 2;
    cfg.offsets = {0.0, 0.7};
    cfg.sets = 20000;
    cfg.window = qcs::Window{0.0, 1.5};
    auto r = qcs::run_experiment(cfg);
    REQUIRE(r.rows.size() == 1);
    REQUIRE(r.rows[0].report.delta_candidates.size() == 1);
    CHECK(r.rows[0].report.delta_candidates[0] == doctest::Approx(0.7).epsilon(0.05));
  }
}

TEST_CASE("fixed transport phase on one qubit biases that pair's estimate") {
  qcs::ExperimentConfig cfg;
  cfg.parties = 2;
  cfg.sets = 200000;
  cfg.offsets = {0.0, 0.0};
  cfg.phase_noise = qcs::NoiseSpec::parse("fixed:0,0.5");
  cfg.seed = 11;

  auto r = qcs::run_experiment(cfg);
  REQUIRE(r.rows.size() == 1);
  // True offset zero but the receiver's qubit carries phase 0.5: the pair
  // statistics are those of offset 0.5, five-sigma band ~ 0.011.
  CHECK(r.rows[0].report.principal_delta == doctest::Approx(0.5).epsilon(0.025));
}

TEST_CASE("two-frequency experiments resolve the mirror ambiguity end to end") {
  qcs::ExperimentConfig cfg;
  cfg.parties = 2;
  cfg.sets = 60000;
  cfg.omega = 1.0;
  cfg.omega2 = 0.7;
  cfg.freq_split = 0.5;
  cfg.offsets = {0.0, 1.0};
  cfg.seed = 31;

  auto r = qcs::run_experiment(cfg);
  REQUIRE(r.rows.size() == 1);
  const auto& row = r.rows[0];
  REQUIRE(row.resolution.has_value());
  CHECK(row.resolution->status == qcs::ResolutionStatus::Resolved);
  CHECK(row.resolution->resolved == doctest::Approx(1.0).epsilon(0.05));
  CHECK(row.report.has_flag(qcs::flag::kTwoFreqResolved));
  CHECK(row.report.principal_delta == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("sweep axes parse and reject what cannot scale") {
  CHECK(qcs::parse_sweep_axis("n") == qcs::SweepAxis::Parties);
  CHECK(qcs::parse_sweep_axis("M") == qcs::SweepAxis::Sets);
  CHECK(qcs::parse_sweep_axis("delta") == qcs::SweepAxis::Delta);
  CHECK(qcs::parse_sweep_axis("phase_noise_scale") == qcs::SweepAxis::PhaseNoiseScale);
  CHECK_THROWS_AS(qcs::parse_sweep_axis("x"), qcs::config_error);

  qcs::ExperimentConfig base;
  base.sets = 100;

  qcs::SweepSpec spec;
  spec.trials = 1;

  SUBCASE("n axis needs scalable noise and no per-party misalignment") {
    spec.axis = qcs::SweepAxis::Parties;
    spec.values = {2, 4};
    base.phase_noise = qcs::NoiseSpec::parse("fixed:0,0");
    CHECK_THROWS_AS(qcs::run_sweep(spec, base), qcs::config_error);
    base.phase_noise = qcs::NoiseSpec::parse("none");
    base.basis_misalign = {0.0, 0.1};
    CHECK_THROWS_AS(qcs::run_sweep(spec, base), qcs::config_error);
    base.basis_misalign.clear();
    spec.values = {1};
    CHECK_THROWS_AS(qcs::run_sweep(spec, base), qcs::config_error);
    spec.values = {2.5};
    CHECK_THROWS_AS(qcs::run_sweep(spec, base), qcs::config_error);
  }

  SUBCASE("M axis takes integers only") {
    spec.axis = qcs::SweepAxis::Sets;
    spec.values = {1000.5};
    CHECK_THROWS_AS(qcs::run_sweep(spec, base), qcs::config_error);
  }

  SUBCASE("empty values or zero trials are rejected") {
    spec.axis = qcs::SweepAxis::Delta;
    spec.values = {};
    CHECK_THROWS_AS(qcs::run_sweep(spec, base), qcs::config_error);
    spec.values = {0.5};
    spec.trials = 0;
    CHECK_THROWS_AS(qcs::run_sweep(spec, base), qcs::config_error);
  }

  SUBCASE("n axis replicates the base receiver offset") {
    base.offsets = {0.0, 1.1};
    spec.axis = qcs::SweepAxis::Parties;
    spec.values = {2, 4};
    spec.trials = 1;
    auto rows = qcs::run_sweep(spec, base);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].true_delta == 1.1);
    CHECK(rows[1].true_delta == 1.1);
  }
}

TEST_CASE("sweep output is ordered, deterministic, and thread-count independent") {
  qcs::ExperimentConfig base;
  base.parties = 2;
  base.sets = 400;
  base.seed = 5;

  qcs::SweepSpec spec;
  spec.axis = qcs::SweepAxis::Delta;
  spec.values = {0.3, 0.9};
  spec.trials = 3;

  spec.threads = 1;
  auto rows1 = qcs::run_sweep(spec, base);
  spec.threads = 2;
  auto rows2 = qcs::run_sweep(spec, base);

  REQUIRE(rows1.size() == 6);
  CHECK(rows1[0].axis_value == 0.3);
  CHECK(rows1[0].trial == 0);
  CHECK(rows1[5].axis_value == 0.9);
  CHECK(rows1[5].trial == 2);

  const std::string csv1 = sweep_csv(spec.axis, rows1);
  CHECK(csv1 == sweep_csv(spec.axis, rows2));
  CHECK(first_line(csv1) ==
        "axis,value,trial,true_delta,delta_hat,error,predicted_std_error,c_hat,flags");
  CHECK(csv1.find("\ndelta,") != std::string::npos);
}

TEST_CASE("sweep error shrinks like one over root M") {
  qcs::ExperimentConfig base;
  base.parties = 2;
  base.offsets = {0.0, 0.7};
  base.seed = 5;

  qcs::SweepSpec spec;
  spec.axis = qcs::SweepAxis::Sets;
  spec.values = {1000, 16000};
  spec.trials = 48;

  auto rows = qcs::run_sweep(spec, base);
  const double r_small = rmse(rows, 1000);
  const double r_big = rmse(rows, 16000);
  // 16x the data should cut the error about 4x; generous band for 48 trials.
  CHECK(r_small / r_big > 2.2);
  CHECK(r_small / r_big < 7.0);
}

TEST_CASE("sweeping delta through zero flags the singular point") {
  qcs::ExperimentConfig base;
  base.parties = 2;
  base.sets = 1000;
  base.seed = 9;

  qcs::SweepSpec spec;
  spec.axis = qcs::SweepAxis::Delta;
  spec.values = {0.0};
  spec.trials = 5;

  auto rows = qcs::run_sweep(spec, base);
  REQUIRE(rows.size() == 5);
  for (const auto& row : rows) {
    bool flagged = false;
    for (const auto& f : row.flags) flagged = flagged || f == qcs::flag::kNearSingular;
    CHECK(flagged);
  }
}
