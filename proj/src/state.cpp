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

#include "qcs/state.hpp"

#include <cmath>
#include <stdexcept>

namespace qcs {

double norm2(const SingleExcitationState& s) {
  double total = std::norm(s.vacuum_amp);
  for (const Complex& a : s.exc_amps) total += std::norm(a);
  return total;
}

SingleExcitationState w_state(int n) {
  if (n < 2) {
    throw std::invalid_argument("w_state: need at least 2 qubits, got " + std::to_string(n));
  }
  SingleExcitationState s;
  s.vacuum_amp = Complex(0.0, 0.0);
  s.exc_amps.assign(static_cast<size_t>(n), Complex(1.0 / std::sqrt(double(n)), 0.0));
  return s;
}

SingleExcitationState generalized_state(Complex vacuum_amp, std::vector<Complex> exc_amps) {
  if (exc_amps.size() < 2) {
    throw std::invalid_argument("generalized_state: need at least 2 excitation amplitudes");
  }
  if (!is_finite(vacuum_amp)) {
    throw std::invalid_argument("generalized_state: non-finite vacuum amplitude");
  }
  for (const Complex& a : exc_amps) {
    if (!is_finite(a)) {
      throw std::invalid_argument("generalized_state: non-finite excitation amplitude");
    }
  }
  SingleExcitationState s;
  s.vacuum_amp = vacuum_amp;
  s.exc_amps = std::move(exc_amps);
  double total = norm2(s);
  if (!(total > 0.0)) {
    throw std::invalid_argument("generalized_state: all amplitudes are zero");
  }
  double inv = 1.0 / std::sqrt(total);
  s.vacuum_amp *= inv;
  for (Complex& a : s.exc_amps) a *= inv;
  return s;
}

}  // namespace qcs
