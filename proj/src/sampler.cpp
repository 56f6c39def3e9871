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

#include "qcs/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qcs {

void validate_schedule(const MeasurementSchedule& sched, int n) {
  if (static_cast<int>(sched.entries.size()) != n) {
    throw std::invalid_argument("schedule: expected " + std::to_string(n) + " entries, got " +
                                std::to_string(sched.entries.size()));
  }
  std::vector<char> seen(static_cast<size_t>(n), 0);
  for (const ScheduleEntry& e : sched.entries) {
    if (e.qubit < 0 || e.qubit >= n) {
      throw std::invalid_argument("schedule: qubit index out of range");
    }
    if (!std::isfinite(e.time)) {
      throw std::invalid_argument("schedule: non-finite measurement time");
    }
    if (seen[static_cast<size_t>(e.qubit)]++) {
      throw std::invalid_argument("schedule: qubit " + std::to_string(e.qubit) +
                                  " measured twice");
    }
  }
}

void SimState::reset(const SingleExcitationState& s, QubitFrequency freq) {
  omega_ = freq.omega;
  vacuum_ = s.vacuum_amp;
  raw_ = s.exc_amps;
  measured_.assign(raw_.size(), 0);
  scale_ = 1.0;
  rest_raw2_ = 0.0;
  for (const Complex& a : raw_) rest_raw2_ += std::norm(a);
  remaining_ = static_cast<int>(raw_.size());
}

double SimState::probability_plus(int qubit, double t) const {
  const size_t q = static_cast<size_t>(qubit);
  const Complex a = raw_[q] * std::polar(scale_, omega_ * t);
  double rest2 = std::max(rest_raw2_ - std::norm(raw_[q]), 0.0) * (scale_ * scale_);
  double p = 0.5 * (std::norm(vacuum_ + a) + rest2);
  if (p < 0.0) {
    if (p < kProbFloor) {
      throw std::logic_error("SimState: probability " + std::to_string(p) +
                             " below the clamp floor");
    }
    p = 0.0;
  }
  return std::min(p, 1.0);
}

double SimState::outcome_probability(int qubit, double t, int s) const {
  if (qubit < 0 || qubit >= n()) {
    throw std::invalid_argument("SimState: qubit index out of range");
  }
  if (is_measured(qubit)) {
    throw std::invalid_argument("SimState: qubit " + std::to_string(qubit) +
                                " already measured this round");
  }
  if (s != 1 && s != -1) throw std::invalid_argument("SimState: outcome must be +1 or -1");
  double pp = probability_plus(qubit, t);
  return s == 1 ? pp : std::max(1.0 - pp, 0.0);
}

void SimState::collapse(int qubit, double t, int s) {
  double p = outcome_probability(qubit, t, s);
  if (p <= 0.0) {
    throw std::logic_error("SimState: forced collapse onto a zero-probability outcome");
  }
  const size_t q = static_cast<size_t>(qubit);
  const Complex a = raw_[q] * std::polar(scale_, omega_ * t);
  const double inv = 1.0 / std::sqrt(2.0 * p);
  vacuum_ = (vacuum_ + double(s) * a) * inv;
  scale_ *= inv;
  rest_raw2_ = std::max(rest_raw2_ - std::norm(raw_[q]), 0.0);
  measured_[q] = 1;
  --remaining_;
}

int SimState::measure(int qubit, double t, Rng& rng) {
  if (qubit < 0 || qubit >= n()) {
    throw std::invalid_argument("SimState: qubit index out of range");
  }
  if (is_measured(qubit)) {
    throw std::invalid_argument("SimState: qubit " + std::to_string(qubit) +
                                " already measured this round");
  }
  const size_t q = static_cast<size_t>(qubit);
  const Complex a = raw_[q] * std::polar(scale_, omega_ * t);
  double rest2 = std::max(rest_raw2_ - std::norm(raw_[q]), 0.0) * (scale_ * scale_);
  double pp = 0.5 * (std::norm(vacuum_ + a) + rest2);
  pp = std::clamp(pp, 0.0, 1.0);

  const int s = rng.uniform() < pp ? 1 : -1;
  const double p = s == 1 ? pp : 1.0 - pp;
  // p > 0 is guaranteed: a sampled outcome has positive probability.
  const double inv = 1.0 / std::sqrt(2.0 * p);
  vacuum_ = (vacuum_ + double(s) * a) * inv;
  scale_ *= inv;
  rest_raw2_ = std::max(rest_raw2_ - std::norm(raw_[q]), 0.0);
  measured_[q] = 1;
  --remaining_;
  return s;
}

Complex SimState::amplitude(int qubit) const {
  if (qubit < 0 || qubit >= n()) {
    throw std::invalid_argument("SimState: qubit index out of range");
  }
  return raw_[static_cast<size_t>(qubit)] * scale_;
}

double SimState::norm2() const {
  double rest = 0.0;
  for (size_t k = 0; k < raw_.size(); ++k) {
    if (!measured_[k]) rest += std::norm(raw_[k]);
  }
  return std::norm(vacuum_) + rest * scale_ * scale_;
}

int measure_qubit(SimState& sim, int qubit, double t, Rng& rng) {
  if (!std::isfinite(t)) throw std::invalid_argument("measure_qubit: non-finite time");
  return sim.measure(qubit, t, rng);
}

void run_round_into(SimState& ws, const SingleExcitationState& s,
                    const MeasurementSchedule& sched, QubitFrequency freq, Rng& rng,
                    RoundOutcome& out) {
  ws.reset(s, freq);
  out.assign(static_cast<size_t>(s.n()), 0);
  for (const ScheduleEntry& e : sched.entries) {
    out[static_cast<size_t>(e.qubit)] = static_cast<std::int8_t>(ws.measure(e.qubit, e.time, rng));
  }
}

RoundOutcome run_round(const SingleExcitationState& s, const MeasurementSchedule& sched,
                       QubitFrequency freq, Rng& rng) {
  validate_schedule(sched, s.n());
  SimState ws;
  RoundOutcome out;
  run_round_into(ws, s, sched, freq, rng, out);
  return out;
}

namespace {

void enumerate_outcomes(const SimState& sim, const MeasurementSchedule& sched, size_t depth,
                        std::uint32_t index, double prob, std::vector<double>& table) {
  if (depth == sched.entries.size()) {
    table[index] = prob;
    return;
  }
  const ScheduleEntry& e = sched.entries[depth];
  const double pp = sim.outcome_probability(e.qubit, e.time, 1);
  const double pm = std::max(1.0 - pp, 0.0);
  if (pp > 0.0) {
    SimState branch = sim;
    branch.collapse(e.qubit, e.time, 1);
    enumerate_outcomes(branch, sched, depth + 1, index, prob * pp, table);
  }
  if (pm > 0.0) {
    SimState branch = sim;
    branch.collapse(e.qubit, e.time, -1);
    enumerate_outcomes(branch, sched, depth + 1, index | (1u << e.qubit), prob * pm, table);
  }
}

}  // namespace

std::vector<double> joint_distribution(const SingleExcitationState& s,
                                       const MeasurementSchedule& sched, QubitFrequency freq) {
  const int n = s.n();
  if (n > 20) {
    throw std::invalid_argument("joint_distribution: table would have 2^" + std::to_string(n) +
                                " entries; limited to n <= 20");
  }
  validate_schedule(sched, n);
  std::vector<double> table(size_t(1) << n, 0.0);
  SimState sim;
  sim.reset(s, freq);
  enumerate_outcomes(sim, sched, 0, 0, 1.0, table);
  return table;
}

}  // namespace qcs
