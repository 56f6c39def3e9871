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

#include "qcs/oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qcs {

namespace {

void apply_excitation_phases(Eigen::VectorXcd& amps, int n, const MeasurementSchedule& sched,
                             QubitFrequency freq) {
  for (const ScheduleEntry& e : sched.entries) {
    const Complex phase = std::polar(1.0, freq.omega * e.time);
    const std::int64_t bit = std::int64_t(1) << e.qubit;
    for (std::int64_t idx = 0; idx < (std::int64_t(1) << n); ++idx) {
      if (idx & bit) amps[idx] *= phase;
    }
  }
}

void hadamard_all(Eigen::VectorXcd& amps, int n) {
  const double r = 1.0 / std::sqrt(2.0);
  for (int q = 0; q < n; ++q) {
    const std::int64_t bit = std::int64_t(1) << q;
    for (std::int64_t idx = 0; idx < (std::int64_t(1) << n); ++idx) {
      if (idx & bit) continue;
      const Complex a = amps[idx];
      const Complex b = amps[idx | bit];
      amps[idx] = (a + b) * r;
      amps[idx | bit] = (a - b) * r;
    }
  }
}

}  // namespace

DenseState embed(const SingleExcitationState& s) {
  const int n = s.n();
  if (n > 14) {
    throw std::invalid_argument("embed: statevector for n = " + std::to_string(n) +
                                " is too large; limited to n <= 14");
  }
  DenseState psi;
  psi.n = n;
  psi.amps = Eigen::VectorXcd::Zero(std::int64_t(1) << n);
  psi.amps[0] = s.vacuum_amp;
  for (int k = 0; k < n; ++k) {
    psi.amps[std::int64_t(1) << k] = s.exc_amps[static_cast<size_t>(k)];
  }
  return psi;
}

std::vector<double> brute_joint_distribution(const DenseState& psi,
                                             const MeasurementSchedule& sched,
                                             QubitFrequency freq) {
  validate_schedule(sched, psi.n);
  Eigen::VectorXcd amps = psi.amps;
  apply_excitation_phases(amps, psi.n, sched, freq);
  hadamard_all(amps, psi.n);
  // After the basis rotation, bit value 0 of qubit k means outcome +1.
  std::vector<double> table(static_cast<size_t>(amps.size()));
  for (std::int64_t idx = 0; idx < amps.size(); ++idx) {
    table[static_cast<size_t>(idx)] = std::norm(amps[idx]);
  }
  return table;
}

PairDensity brute_pair_density(const DenseState& psi, int i, int j) {
  if (i < 0 || j < 0 || i >= psi.n || j >= psi.n || i == j) {
    throw std::invalid_argument("brute_pair_density: bad qubit pair");
  }
  const std::int64_t bi = std::int64_t(1) << i;
  const std::int64_t bj = std::int64_t(1) << j;

  PairDensity rho;
  rho.basis = BasisTag::Computational;
  rho.m.setZero();

  // Scatter the remaining n-2 bits, then take the outer product of the four
  // amplitudes sharing each environment configuration.
  const int rest_bits = psi.n - 2;
  for (std::int64_t env = 0; env < (std::int64_t(1) << rest_bits); ++env) {
    std::int64_t base = 0;
    int src = 0;
    for (int q = 0; q < psi.n; ++q) {
      if (q == i || q == j) continue;
      if ((env >> src) & 1) base |= std::int64_t(1) << q;
      ++src;
    }
    Eigen::Vector4cd block;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        block[2 * a + b] = psi.amps[base | (a ? bi : 0) | (b ? bj : 0)];
    rho.m += block * block.adjoint();
  }
  return rho;
}

ConditionalOutcome brute_conditional_receiver(const DenseState& psi, int publisher,
                                              int receiver, int outcome, double t,
                                              QubitFrequency freq) {
  if (publisher < 0 || receiver < 0 || publisher >= psi.n || receiver >= psi.n ||
      publisher == receiver) {
    throw std::invalid_argument("brute_conditional_receiver: bad qubit pair");
  }
  if (outcome != 1 && outcome != -1) {
    throw std::invalid_argument("brute_conditional_receiver: outcome must be +1 or -1");
  }

  // Free evolution of the receiver between the publisher's measurement at
  // time 0 and the receiver's at time t.
  Eigen::VectorXcd amps = psi.amps;
  const std::int64_t br = std::int64_t(1) << receiver;
  const Complex phase = std::polar(1.0, freq.omega * t);
  for (std::int64_t idx = 0; idx < amps.size(); ++idx) {
    if (idx & br) amps[idx] *= phase;
  }

  // Project the publisher onto (|0> + s|1>)/sqrt(2): the unnormalized
  // post-measurement amplitude of each publisher-less configuration is
  // (amp0 + s amp1)/sqrt(2).
  const std::int64_t bp = std::int64_t(1) << publisher;
  const double r = 1.0 / std::sqrt(2.0);
  Eigen::VectorXcd reduced = Eigen::VectorXcd::Zero(amps.size() >> 1);
  std::int64_t dst = 0;
  for (std::int64_t idx = 0; idx < amps.size(); ++idx) {
    if (idx & bp) continue;
    reduced[dst++] = (amps[idx] + double(outcome) * amps[idx | bp]) * r;
  }
  const double prob = reduced.squaredNorm();
  if (prob <= 1e-15) {
    throw zero_probability_error("brute_conditional_receiver: outcome probability zero");
  }

  // Partial trace down to the receiver qubit (index shifted once the
  // publisher bit is gone).
  const int recv_pos = receiver > publisher ? receiver - 1 : receiver;
  const std::int64_t brr = std::int64_t(1) << recv_pos;
  Eigen::Matrix2cd comp = Eigen::Matrix2cd::Zero();
  for (std::int64_t idx = 0; idx < reduced.size(); ++idx) {
    if (idx & brr) continue;
    const Complex a0 = reduced[idx];
    const Complex a1 = reduced[idx | brr];
    comp(0, 0) += a0 * std::conj(a0);
    comp(0, 1) += a0 * std::conj(a1);
    comp(1, 0) += a1 * std::conj(a0);
    comp(1, 1) += a1 * std::conj(a1);
  }
  comp /= prob;

  Eigen::Matrix2cd h;
  h << Complex(r, 0), Complex(r, 0), Complex(r, 0), Complex(-r, 0);

  ConditionalOutcome out;
  out.probability = prob;
  out.state.basis = BasisTag::Measurement;
  out.state.m = h * comp * h;
  return out;
}

}  // namespace qcs
