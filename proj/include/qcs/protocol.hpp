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

#include <optional>
#include <vector>

#include "qcs/bulletin.hpp"
#include "qcs/config.hpp"
#include "qcs/estimation.hpp"

namespace qcs {

/// A protocol participant. Each party measures its qubit of every set at its
/// own local time zero, i.e. at standard time clock_offset.
struct Party {
  int id = 0;
  double clock_offset = 0.0;
};

/// Runs the full quantum phase: for every set, prepares the (noisy) shared
/// state, measures each party's qubit in the {|+>, |->} basis at that party's
/// local zero, and publishes every outcome. Measurement randomness for set k
/// comes from substream (seed, k, salt=0), so results are independent of set
/// processing order and identical across runs with the same seed.
Bulletin run_protocol(const ExperimentConfig& cfg);

/// One receiver's estimation pass over published records, split by frequency
/// tag. `per_frequency` is ordered by tag ("w1" first); `combined` is the
/// w1 report unless a two-frequency resolution updated the candidate set.
struct SyncDetail {
  std::vector<EstimateReport> per_frequency;
  EstimateReport combined;
  std::optional<TwoFreqResult> resolution;
};

/// Classical post-processing for one receiver: tallies agreement with the
/// publisher, estimates cos(w delta) per frequency tag, inverts to offset
/// candidates, and, when two tags are present, intersects the candidate sets
/// to resolve the ambiguity. `omegas` maps tag order (w1, w2) to frequencies.
/// Throws std::invalid_argument when the record lists share no set ids.
SyncDetail synchronize_detailed(const std::vector<BulletinRecord>& local,
                                const std::vector<BulletinRecord>& published, int parties,
                                const std::vector<QubitFrequency>& omegas,
                                const Window& window);

/// Same, returning only the combined report.
EstimateReport synchronize(const std::vector<BulletinRecord>& local,
                           const std::vector<BulletinRecord>& published, int parties,
                           const std::vector<QubitFrequency>& omegas, const Window& window);

}  // namespace qcs
