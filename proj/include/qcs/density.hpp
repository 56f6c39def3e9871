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

#pragma once

#include <Eigen/Dense>
#include <utility>

#include "qcs/state.hpp"
#include "qcs/types.hpp"

namespace qcs {

/// Single-qubit density matrix plus the basis its entries are written in.
struct QubitDensity {
  Eigen::Matrix2cd m;
  BasisTag basis = BasisTag::Computational;
};

/// Two-qubit density matrix. Row/column index is 2a + b where a is the first
/// qubit's bit and b the second's (computational), or a/b in {+ = 0, - = 1}
/// (measurement basis).
struct PairDensity {
  Eigen::Matrix4cd m;
  BasisTag basis = BasisTag::Computational;
};

/// Signals a conditional state requested for an outcome of probability zero.
struct zero_probability_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Throws std::invalid_argument unless m is hermitian and unit-trace within
/// 1e-12 with eigenvalues above -1e-10.
void validate_density(const QubitDensity& d);
void validate_density(const PairDensity& d);

/// Reduced state of qubits (i, j) obtained by tracing out the rest.
/// For a pure single-excitation state the result is closed-form: with
/// v = vacuum amplitude and a_k the excitation amplitudes,
///
///   rho = [ |v|^2 + sum_{k != i,j} |a_k|^2   v conj(a_j)   v conj(a_i)   0
///           conj(.)                          |a_j|^2       a_j conj(a_i) 0
///           conj(.)                          conj(.)       |a_i|^2       0
///           0                                0             0             0 ]
///
/// in the computational basis; the |11> row and column vanish because the
/// sector holds at most one excitation.
PairDensity pair_density_computational(const SingleExcitationState& s, int i, int j);

/// Conjugates by H (x) H, mapping computational entries to the {|+>, |->}
/// basis. Input must be tagged computational.
PairDensity to_measurement_basis(const PairDensity& rho);

/// Inverse of to_measurement_basis (H is an involution).
PairDensity to_computational_basis(const PairDensity& rho);

struct ConditionalOutcome {
  double probability = 0.0;  // chance the publisher sees this outcome
  QubitDensity state;        // receiver state given that outcome (measurement basis)
};

/// Projects the first (publisher) qubit of a measurement-basis pair density
/// onto outcome +1 (|+>) or -1 (|->) and returns the renormalized receiver
/// qubit state together with the outcome probability. Probability zero is
/// signaled with zero_probability_error since no conditional state exists.
ConditionalOutcome conditional_receiver_state(const PairDensity& rho, int publisher_outcome);

/// Free evolution of one qubit for time t: conjugation by diag(1, e^{+i w t})
/// in the computational basis, i.e. the excited component advances in phase.
/// Input and output are tagged measurement basis, where the dephasing shows
/// up as rotation of the off-diagonal entries.
QubitDensity evolve_qubit(const QubitDensity& rho, double t, QubitFrequency freq);

/// Probabilities (p_plus, p_minus) for the receiver's measurement-basis
/// outcome given the publisher's outcome, for the symmetric n-qubit state
/// with clock offset delta between the two measurements:
///   p_agree = 1/2 + cos(w delta)/n,  p_disagree = 1/2 - cos(w delta)/n.
std::pair<double, double> outcome_probabilities(int n, double delta, QubitFrequency freq,
                                                int publisher_outcome);

/// Joint distribution of measurement-basis outcomes on qubits i and j when
/// qubit j is measured `delta` later than qubit i (receiver lag, delta may be
/// negative). Entries are P(s_i, s_j) with p = +1, m = -1.
struct PairCorrelation {
  double pp = 0.0;
  double pm = 0.0;
  double mp = 0.0;
  double mm = 0.0;

  double agree() const { return pp + mm; }
  double first_plus() const { return pp + pm; }
  double second_plus() const { return pp + mp; }
};

PairCorrelation pair_correlation(const SingleExcitationState& s, int i, int j, double delta,
                                 QubitFrequency freq);

/// Wootters concurrence of a two-qubit density matrix (computational basis).
/// Zero for separable states, 1 for Bell pairs; 2/n for any pair of the
/// symmetric n-qubit single-excitation state. Computed through the hermitian
/// form sqrt(rho) rho~ sqrt(rho) with two self-adjoint eigensolves, which is
/// numerically stable where the non-symmetric product rho rho~ is not.
double concurrence(const PairDensity& rho);

}  // namespace qcs
