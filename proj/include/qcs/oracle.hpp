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

#include "qcs/density.hpp"
#include "qcs/sampler.hpp"
#include "qcs/state.hpp"

// Brute-force reference implementations over the full 2^n statevector.
// Everything here is deliberately slow and direct: no sector shortcut, no
// lazy phases, no closed forms. The fast library is tested against these;
// they are never used in the protocol path.

namespace qcs {

/// Full statevector, little-endian: basis index bit k is qubit k's bit.
struct DenseState {
  int n = 0;
  Eigen::VectorXcd amps;  // size 2^n
};

/// Embeds a single-excitation state into the full Hilbert space. n <= 14.
DenseState embed(const SingleExcitationState& s);

/// Joint outcome distribution of measuring every qubit in the {|+>, |->}
/// basis at its scheduled time: applies e^{+i w t_k} to each basis state
/// containing excitation k, rotates every qubit by H, and reads squared
/// magnitudes. Index convention matches joint_distribution.
std::vector<double> brute_joint_distribution(const DenseState& psi,
                                             const MeasurementSchedule& sched,
                                             QubitFrequency freq);

/// Reduced density matrix of qubits (i, j) by explicit partial trace,
/// computational basis.
PairDensity brute_pair_density(const DenseState& psi, int i, int j);

/// Receiver's conditional state when the publisher measures outcome s at
/// standard time 0 and the receiver's qubit then evolves to time t: applies
/// the phase to the receiver, projects the publisher onto (|0> + s|1>)/sqrt(2),
/// traces out everything else, and rotates the receiver to the measurement
/// basis. Returns the publisher outcome probability and the normalized state.
ConditionalOutcome brute_conditional_receiver(const DenseState& psi, int publisher,
                                              int receiver, int outcome, double t,
                                              QubitFrequency freq);

}  // namespace qcs
