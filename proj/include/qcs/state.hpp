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

#include <vector>

#include "qcs/types.hpp"

namespace qcs {

/// Pure n-qubit state confined to the span of |0...0> and the single-
/// excitation basis states |e_k> (qubit k flipped to |1>, the rest |0>).
/// Storage is n+1 amplitudes instead of 2^n, which is what makes million-set
/// protocol runs cheap. Invariant: |vacuum_amp|^2 + sum |exc_amps[k]|^2 == 1
/// up to rounding.
struct SingleExcitationState {
  Complex vacuum_amp{0.0, 0.0};
  std::vector<Complex> exc_amps;

  int n() const { return static_cast<int>(exc_amps.size()); }
};

/// Squared norm, |vacuum|^2 + sum |exc|^2.
double norm2(const SingleExcitationState& s);

/// The symmetric single-excitation state on n qubits: zero vacuum amplitude
/// and every excitation amplitude 1/sqrt(n). Requires n >= 2; a single qubit
/// has no pair to share entanglement with.
SingleExcitationState w_state(int n);

/// Arbitrary state in the same sector. Amplitudes may carry per-qubit phases
/// (transport noise) or be non-uniform. Near-unit input is renormalized
/// silently; an all-zero amplitude list is rejected, as are non-finite
/// entries or fewer than two qubits.
SingleExcitationState generalized_state(Complex vacuum_amp, std::vector<Complex> exc_amps);

}  // namespace qcs
