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
#include <string>
#include <vector>

#include "qcs/config.hpp"
#include "qcs/state.hpp"

namespace qcs {

/// One distributed entangled set as actually delivered: its id, drive
/// frequency tag, and the total accumulated phase on each party's qubit
/// (transport noise plus the basis-misalignment-as-phase model).
struct QubitSet {
  std::int64_t set_id = 0;
  std::string freq_tag;
  std::vector<double> phases;  // one per party
};

/// Describes set `set_id` under the config's noise model. Gaussian draws come
/// from the substream (seed, set_id, salt=1) so they are independent of both
/// measurement randomness and processing order.
QubitSet make_qubit_set(const ExperimentConfig& cfg, std::int64_t set_id);

/// State of that set: the symmetric state with each excitation amplitude
/// rotated by e^{i phase_k}.
SingleExcitationState state_of(const QubitSet& set);

/// Convenience composition of the two. The zero-noise fast path returns the
/// clean symmetric state without touching the RNG.
SingleExcitationState apply_noise(const ExperimentConfig& cfg, std::int64_t set_id);

}  // namespace qcs
