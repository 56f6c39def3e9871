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
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

// Self-check battery: closed-form expectations for the symmetric state and
// randomized comparisons of the fast library against the brute-force oracle.
// The expectations below are written straight from the closed forms, not via
// library calls, so the two code paths are independent.

namespace qcs::checks {

/// Pair density of the symmetric n-qubit single-excitation state,
/// computational basis: (1/n) [[n-2,0,0,0],[0,1,1,0],[0,1,1,0],[0,0,0,0]].
Eigen::Matrix4cd wstate_pair_computational(int n);

/// Same state in the {|+>, |->} basis:
/// (1/4n) [[n+2,n-2,n-2,n-6],[n-2,n-2,n-2,n-2],[n-2,n-2,n-2,n-2],[n-6,n-2,n-2,n+2]].
Eigen::Matrix4cd wstate_pair_measurement(int n);

/// Receiver state after the publisher reports outcome s (probability 1/2
/// each): (1/2n) [[n+2s', ...]] where the + branch is [[n+2,n-2],[n-2,n-2]]
/// and the - branch [[n-2,n-2],[n-2,n+2]].
Eigen::Matrix2cd wstate_conditional(int n, int outcome);

/// The + branch evolved for phase theta = w t:
/// (1/2n) [[n+2cos(theta), n-2+2i sin(theta)], [n-2-2i sin(theta), n-2cos(theta)]].
Eigen::Matrix2cd wstate_conditional_evolved(int n, double theta);

/// Agreement law: P(receiver matches publisher) = 1/2 + cos(w delta)/n.
double wstate_agreement_probability(int n, double omega_delta);

struct CheckResult {
  std::string name;
  bool passed = false;
  double observed = 0.0;  // worst error seen
  double bound = 0.0;
  std::string detail;
};

inline constexpr std::uint64_t kDefaultCheckSeed = 0xC10C5EEDULL;

/// Closed-form identity checks over an n grid (exact algebra, bound 1e-12).
std::vector<CheckResult> closed_form_checks();

/// Randomized fast-vs-brute comparisons: joint distributions, pair densities,
/// correlations, conditional evolution, schedule-order and time-shift
/// invariance. `cases` random states with n in [2, 10].
std::vector<CheckResult> oracle_comparison_checks(std::uint64_t seed, int cases);

/// Full battery with defaults; prints one line per check to `out` and
/// returns true when everything passed.
bool run_validation(std::ostream& out);

std::vector<CheckResult> run_all_checks(std::uint64_t seed = kDefaultCheckSeed,
                                        int oracle_cases = 20);

}  // namespace qcs::checks
