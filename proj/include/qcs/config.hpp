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
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcs/estimation.hpp"
#include "qcs/types.hpp"

namespace qcs {

/// Configuration problem: message lists every offending field.
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Per-qubit transport phase noise.
///   none         no added phase
///   fixed:a,b,.. deterministic phase list, one entry per party
///   gauss:sigma  i.i.d. N(0, sigma^2) phase per qubit per set
struct NoiseSpec {
  enum class Kind { None, Fixed, Gauss };
  Kind kind = Kind::None;
  std::vector<double> phases;  // Fixed
  double sigma = 0.0;          // Gauss

  static NoiseSpec parse(const std::string& text);
  std::string to_string() const;
};

/// Full description of one experiment: who participates, how many entangled
/// sets are consumed, the drive frequency (or two), clock offsets, noise, and
/// the RNG seed. Field names match the config file keys and CLI flags.
struct ExperimentConfig {
  int parties = 2;
  std::int64_t sets = 1000;
  double omega = 1.0;
  std::optional<double> omega2;      // enables the two-frequency strategy
  double freq_split = 0.5;           // fraction of sets driven at omega2
  std::vector<double> offsets;       // per-party clock offset; empty = all zero
  NoiseSpec phase_noise;
  std::vector<double> basis_misalign;  // per-party angle, folded in as phase
  std::uint64_t seed = 0;
  std::optional<Window> window;      // default [0, 2 pi / min omega)

  /// Throws config_error listing all invalid fields.
  void validate() const;

  double offset_of(int party) const;
  bool two_frequency() const { return omega2.has_value(); }
  QubitFrequency freq1() const { return QubitFrequency(omega); }
  QubitFrequency freq2() const { return QubitFrequency(*omega2); }

  /// Frequency tag of a set id: sets are interleaved deterministically so a
  /// fraction freq_split of any prefix runs at omega2 ("w2"), the rest at
  /// omega ("w1").
  const char* freq_tag_of_set(std::int64_t set_id) const;
  QubitFrequency freq_of_tag(const std::string& tag) const;

  Window effective_window() const;
  bool has_basis_misalign() const;
};

/// Reads a flat JSON object into a config. Unknown keys are rejected (they
/// are almost always typos). "out"/"format" keys are allowed and surfaced
/// separately since they belong to the CLI, not the experiment.
struct LoadedConfig {
  ExperimentConfig config;
  std::optional<std::string> out;
  std::optional<std::string> format;
};

LoadedConfig load_config_json(const std::string& json_text);
LoadedConfig load_config_file(const std::string& path);

std::vector<double> parse_double_list(const std::string& text, const char* field);

}  // namespace qcs
