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
#include <numeric>

#include "doctest.h"
#include "qcs/density.hpp"
#include "qcs/rng.hpp"
#include "qcs/sampler.hpp"
#include "qcs/state.hpp"

using namespace qcs;

namespace {

MeasurementSchedule all_at(int n, double t) {
  MeasurementSchedule s;
  for (int q = 0; q < n; ++q) s.entries.push_back({q, t});
  return s;
}

}  // namespace

TEST_CASE("first measurement of the symmetric state is a fair coin, exactly") {
  SimState sim;
  sim.reset(w_state(3), QubitFrequency(1.0));
  CHECK(sim.outcome_probability(1, 0.0, 1) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(sim.outcome_probability(1, 0.0, -1) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(sim.remaining() == 3);

  // Joint marginal agrees: summing the exact table over the other qubits.
  std::vector<double> table = joint_distribution(w_state(3), all_at(3, 0.0), QubitFrequency(1.0));
  double p_plus = 0.0;
  for (size_t idx = 0; idx < table.size(); ++idx) {
    if (!((idx >> 1) & 1)) p_plus += table[idx];
  }
  CHECK(p_plus == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("collapse keeps the norm at 1 and marks qubits measured") {
  Rng rng(7);
  SimState sim;
  sim.reset(w_state(6), QubitFrequency(0.9));
  for (int q = 0; q < 6; ++q) {
    int s = sim.measure(q, 0.3 * q, rng);
    CHECK((s == 1 || s == -1));
    CHECK(sim.is_measured(q));
    CHECK(std::abs(sim.norm2() - 1.0) < kCollapseNormTol);
  }
  CHECK(sim.remaining() == 0);

  CHECK_THROWS_AS(sim.measure(2, 0.0, rng), std::invalid_argument);  // already measured
  CHECK_THROWS_AS(sim.measure(9, 0.0, rng), std::invalid_argument);  // out of range
}

TEST_CASE("degenerate branches: forced collapse onto probability zero throws") {
  // For n = 2 at delta = 0 the two outcomes agree with certainty, so after
  // measuring +1 the partner's -1 branch has probability exactly zero.
  SimState sim;
  sim.reset(w_state(2), QubitFrequency(1.0));
  sim.collapse(0, 0.0, 1);
  CHECK(sim.outcome_probability(1, 0.0, 1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(sim.collapse(1, 0.0, -1), std::logic_error);            // zero-probability
  CHECK_NOTHROW(sim.collapse(1, 0.0, 1));                                 // certainty is fine
  CHECK(std::abs(sim.norm2() - 1.0) < kCollapseNormTol);
}

TEST_CASE("run_round validates the schedule") {
  Rng rng(11);
  SingleExcitationState s = w_state(4);
  QubitFrequency freq(1.0);

  RoundOutcome out = run_round(s, all_at(4, 0.0), freq, rng);
  CHECK(out.size() == 4);
  for (auto v : out) CHECK((v == 1 || v == -1));

  MeasurementSchedule missing;
  missing.entries = {{0, 0.0}, {1, 0.0}, {2, 0.0}};
  CHECK_THROWS_AS(run_round(s, missing, freq, rng), std::invalid_argument);

  MeasurementSchedule twice;
  twice.entries = {{0, 0.0}, {1, 0.0}, {1, 0.5}, {3, 0.0}};
  CHECK_THROWS_AS(run_round(s, twice, freq, rng), std::invalid_argument);

  MeasurementSchedule bad_index;
  bad_index.entries = {{0, 0.0}, {1, 0.0}, {2, 0.0}, {4, 0.0}};
  CHECK_THROWS_AS(run_round(s, bad_index, freq, rng), std::invalid_argument);
}

TEST_CASE("joint distribution: frozen values for small symmetric states") {
  QubitFrequency freq(1.0);

  // n = 2, both at time 0: outcomes always agree, each sign with chance 1/2.
  std::vector<double> t2 = joint_distribution(w_state(2), all_at(2, 0.0), freq);
  CHECK(t2[0b00] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(t2[0b11] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(t2[0b01] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(t2[0b10] == doctest::Approx(0.0).epsilon(1e-12));

  // n = 4, all at time 0: P(all +) = |sum a_k|^2 / 2^n * ... = 1/4.
  std::vector<double> t4 = joint_distribution(w_state(4), all_at(4, 0.0), freq);
  CHECK(t4[0] == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(std::accumulate(t4.begin(), t4.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-12));

  // Pairwise marginal of the table reproduces the two-point law at lag 0.7.
  MeasurementSchedule sched;
  sched.entries = {{0, 0.0}, {1, 0.7}, {2, -1.2}, {3, 2.0}};
  std::vector<double> t = joint_distribution(w_state(4), sched, freq);
  double agree01 = 0.0;
  for (size_t idx = 0; idx < t.size(); ++idx) {
    if (((idx >> 0) & 1) == ((idx >> 1) & 1)) agree01 += t[idx];
  }
  CHECK(agree01 == doctest::Approx(0.5 + std::cos(0.7) / 4.0).epsilon(1e-12));

  CHECK_THROWS_AS(joint_distribution(generalized_state(Complex(0, 0),
                                                       std::vector<Complex>(21, Complex(1, 0))),
                                     all_at(21, 0.0), freq),
                  std::invalid_argument);
}

TEST_CASE("sampled outcome frequencies match the exact joint distribution") {
  // Chi-squared-style bound: with R rounds each table entry is within
  // 5 sigma of its expectation. Seeded, so deterministic in practice.
  const int n = 3;
  QubitFrequency freq(1.4);
  SingleExcitationState s = generalized_state(
      Complex(0.4, -0.1), {Complex(0.8, 0.1), Complex(-0.2, 0.5), Complex(0.1, 0.6)});
  MeasurementSchedule sched;
  sched.entries = {{2, 0.4}, {0, 0.0}, {1, -0.9}};

  std::vector<double> expect = joint_distribution(s, sched, freq);

  const int rounds = 200000;
  std::vector<int> counts(size_t(1) << n, 0);
  SimState ws;
  RoundOutcome out;
  for (int r = 0; r < rounds; ++r) {
    Rng rng = Rng::substream(0xFEED, static_cast<std::uint64_t>(r));
    run_round_into(ws, s, sched, freq, rng, out);
    size_t idx = 0;
    for (int q = 0; q < n; ++q) {
      if (out[static_cast<size_t>(q)] == -1) idx |= size_t(1) << q;
    }
    ++counts[idx];
  }
  for (size_t idx = 0; idx < counts.size(); ++idx) {
    double p = expect[idx];
    double sigma = std::sqrt(std::max(p * (1.0 - p) / rounds, 1e-12));
    CHECK(std::abs(double(counts[idx]) / rounds - p) < 5.0 * sigma + 1e-9);
  }
}

TEST_CASE("identical seeds reproduce rounds bit-for-bit") {
  SingleExcitationState s = w_state(5);
  QubitFrequency freq(1.0);
  MeasurementSchedule sched = all_at(5, 0.0);
  for (int round = 0; round < 50; ++round) {
    Rng a = Rng::substream(42, static_cast<std::uint64_t>(round));
    Rng b = Rng::substream(42, static_cast<std::uint64_t>(round));
    CHECK(run_round(s, sched, freq, a) == run_round(s, sched, freq, b));
  }
}
