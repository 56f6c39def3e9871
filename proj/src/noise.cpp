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

#include "qcs/noise.hpp"

#include <cmath>

#include "qcs/rng.hpp"

namespace qcs {

namespace {
// Substream salts: 0 is measurement randomness (protocol.cpp), 1 is noise.
constexpr std::uint64_t kNoiseSalt = 1;
}  // namespace

QubitSet make_qubit_set(const ExperimentConfig& cfg, std::int64_t set_id) {
  QubitSet set;
  set.set_id = set_id;
  set.freq_tag = cfg.freq_tag_of_set(set_id);
  set.phases.assign(static_cast<size_t>(cfg.parties), 0.0);

  switch (cfg.phase_noise.kind) {
    case NoiseSpec::Kind::None:
      break;
    case NoiseSpec::Kind::Fixed:
      set.phases = cfg.phase_noise.phases;
      break;
    case NoiseSpec::Kind::Gauss: {
      Rng rng = Rng::substream(cfg.seed, static_cast<std::uint64_t>(set_id), kNoiseSalt);
      for (double& p : set.phases) p = cfg.phase_noise.sigma * rng.normal();
      break;
    }
  }

  // A small rotation of a party's measurement basis about the energy axis is
  // indistinguishable from an extra phase on its qubit; fold it in here.
  for (std::size_t k = 0; k < cfg.basis_misalign.size(); ++k) {
    set.phases[k] += cfg.basis_misalign[k];
  }
  return set;
}

SingleExcitationState state_of(const QubitSet& set) {
  const int n = static_cast<int>(set.phases.size());
  SingleExcitationState s = w_state(n);
  for (int k = 0; k < n; ++k) {
    const double phi = set.phases[static_cast<size_t>(k)];
    if (phi != 0.0) {
      s.exc_amps[static_cast<size_t>(k)] *= Complex(std::cos(phi), std::sin(phi));
    }
  }
  return s;
}

SingleExcitationState apply_noise(const ExperimentConfig& cfg, std::int64_t set_id) {
  if (cfg.phase_noise.kind == NoiseSpec::Kind::None && !cfg.has_basis_misalign()) {
    return w_state(cfg.parties);
  }
  return state_of(make_qubit_set(cfg, set_id));
}

}  // namespace qcs
