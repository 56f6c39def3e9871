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

#include <cstdint>
#include <vector>

#include "qcs/rng.hpp"
#include "qcs/state.hpp"
#include "qcs/types.hpp"

namespace qcs {

struct ScheduleEntry {
  int qubit = 0;
  double time = 0.0;  // standard time of the measurement
};

/// Measurement order and times for one round. Must cover each qubit of the
/// state exactly once.
struct MeasurementSchedule {
  std::vector<ScheduleEntry> entries;
};

void validate_schedule(const MeasurementSchedule& sched, int n);

/// Outcome per qubit, indexed by qubit id; +1 for |+>, -1 for |->.
using RoundOutcome = std::vector<std::int8_t>;

/// Mutable sampling state for one round of sequential measurements.
///
/// The state stays inside the (vacuum + single excitation) sector throughout:
/// measuring qubit j in the {|+>, |->} basis with outcome s collapses
///
///   vacuum   -> (vacuum + s a_j e^{i w t}) / sqrt(2 p_s)
///   a_k      ->  a_k / sqrt(2 p_s)             (k != j)
///   p_s      =  (|vacuum + s a_j e^{i w t}|^2 + sum_{k != j} |a_k|^2) / 2,
///
/// so a round of n measurements is O(n) total: amplitudes are stored raw with
/// one shared scale factor and a running sum of unmeasured |raw|^2, making
/// each collapse O(1). Free evolution is applied lazily as the phase
/// e^{+i w t} at measurement time.
class SimState {
 public:
  SimState() = default;

  /// Loads a fresh state; reuses buffers so per-round cost is one copy.
  void reset(const SingleExcitationState& s, QubitFrequency freq);

  int n() const { return static_cast<int>(raw_.size()); }
  int remaining() const { return remaining_; }
  bool is_measured(int qubit) const { return measured_[static_cast<size_t>(qubit)] != 0; }
  double omega() const { return omega_; }

  /// Probability of outcome s (+1 or -1) if qubit were measured at time t now.
  double outcome_probability(int qubit, double t, int s) const;

  /// Samples an outcome for qubit at time t and collapses. O(1).
  int measure(int qubit, double t, Rng& rng);

  /// Collapses onto a known outcome; used by exhaustive enumeration. Throws
  /// std::logic_error if that outcome has probability zero.
  void collapse(int qubit, double t, int s);

  /// Effective (scaled) amplitudes of the current post-measurement state.
  Complex vacuum_amp() const { return vacuum_; }
  Complex amplitude(int qubit) const;

  /// Squared norm of the tracked amplitudes; 1 within 1e-9 after every
  /// collapse by construction.
  double norm2() const;

 private:
  double probability_plus(int qubit, double t) const;

  double omega_ = 1.0;
  Complex vacuum_{0.0, 0.0};
  std::vector<Complex> raw_;         // amplitudes at reset time, never rescaled
  std::vector<std::uint8_t> measured_;
  double scale_ = 1.0;               // effective amp = raw * scale (unmeasured)
  double rest_raw2_ = 0.0;           // sum of |raw|^2 over unmeasured qubits
  int remaining_ = 0;
};

/// Measures one qubit of a round in progress. Thin wrapper over
/// SimState::measure with bounds and double-measurement checks.
int measure_qubit(SimState& sim, int qubit, double t, Rng& rng);

/// Runs a full round: loads `s`, measures every qubit per the schedule,
/// returns outcomes indexed by qubit.
RoundOutcome run_round(const SingleExcitationState& s, const MeasurementSchedule& sched,
                       QubitFrequency freq, Rng& rng);

/// Same, reusing caller-owned workspace and output buffers. The schedule must
/// already be validated against s.n().
void run_round_into(SimState& ws, const SingleExcitationState& s,
                    const MeasurementSchedule& sched, QubitFrequency freq, Rng& rng,
                    RoundOutcome& out);

/// Exact joint distribution over all 2^n outcome tuples of a round, computed
/// by enumerating the collapse tree (no sampling). Index bit k gives qubit
/// k's outcome: 0 for +1, 1 for -1. Requires n <= 20. Zero-probability
/// branches are pruned, never divided by.
std::vector<double> joint_distribution(const SingleExcitationState& s,
                                       const MeasurementSchedule& sched, QubitFrequency freq);

}  // namespace qcs
