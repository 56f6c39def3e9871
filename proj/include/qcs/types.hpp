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

#include <cmath>
#include <complex>
#include <stdexcept>

namespace qcs {

using Complex = std::complex<double>;

/// Tolerance for algebraic identities (hermiticity, unit trace, closed forms).
inline constexpr double kAlgebraTol = 1e-12;

/// Density eigenvalues may dip this far below zero before a matrix is
/// considered non-physical.
inline constexpr double kEigenvalueFloor = -1e-10;

/// Post-collapse norm must match 1 to within this bound.
inline constexpr double kCollapseNormTol = 1e-9;

/// Sampled probabilities this far below zero are clamped; anything lower
/// indicates a bug and is reported.
inline constexpr double kProbFloor = -1e-12;

/// Angular frequency of the qubit energy splitting. Always finite and > 0.
struct QubitFrequency {
  double omega = 1.0;

  QubitFrequency() = default;
  explicit QubitFrequency(double w) : omega(w) {
    if (!(std::isfinite(w) && w > 0.0)) {
      throw std::invalid_argument("QubitFrequency: omega must be finite and positive");
    }
  }
};

/// Which single-qubit basis a density matrix is expressed in. Computational is
/// {|0>, |1>}; measurement is {|+>, |->} with |+-> = (|0> +- |1>)/sqrt(2).
enum class BasisTag { Computational, Measurement };

inline bool is_finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

}  // namespace qcs
