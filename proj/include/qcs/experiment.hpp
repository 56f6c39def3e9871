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

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qcs/config.hpp"
#include "qcs/estimation.hpp"
#include "qcs/protocol.hpp"

namespace qcs {

/// Result row for one receiver of one experiment.
struct ExperimentRow {
  int receiver = 0;
  double true_delta = 0.0;  // offsets[receiver] - offsets[publisher]
  EstimateReport report;    // combined (two-frequency aware) report
  std::optional<TwoFreqResult> resolution;
};

struct ExperimentResult {
  Bulletin bulletin;
  std::vector<ExperimentRow> rows;  // receivers 1..parties-1 in order
};

/// End-to-end run: protocol, then estimation for every receiver against
/// publisher 0. Deterministic for a fixed config.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

enum class SweepAxis { Parties, Sets, Delta, PhaseNoiseScale };

SweepAxis parse_sweep_axis(const std::string& name);  // "n", "M", "delta", "phase_noise_scale"
const char* sweep_axis_name(SweepAxis axis);

/// Monte Carlo sweep over one axis. Each (value, trial) cell runs a full
/// experiment with an independent seed derived from (base seed, value index,
/// trial), so results do not depend on execution order or thread count.
struct SweepSpec {
  SweepAxis axis = SweepAxis::Delta;
  std::vector<double> values;
  int trials = 200;
  int threads = 0;  // 0 = hardware concurrency
};

/// One sweep cell outcome for the canonical pair (publisher 0, receiver 1).
struct SweepRow {
  double axis_value = 0.0;
  int trial = 0;
  double true_delta = 0.0;
  double delta_hat = 0.0;        // resolved offset when available, else principal
  double error = 0.0;            // delta_hat - |true_delta|
  double predicted_sigma = 0.0;  // delta-method standard error at delta_hat
  double c_hat = 0.0;
  std::vector<std::string> flags;
};

std::vector<SweepRow> run_sweep(const SweepSpec& spec, const ExperimentConfig& base);

/// CSV writers. All floating-point fields carry 17 significant digits so
/// files are bit-faithful and byte-identical across runs; row order is fixed.
void write_experiment_csv(std::ostream& out, const std::vector<ExperimentRow>& rows);
void write_sweep_csv(std::ostream& out, SweepAxis axis, const std::vector<SweepRow>& rows);

}  // namespace qcs
