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
#include <iosfwd>
#include <string>
#include <vector>

#include "qcs/bulletin.hpp"
#include "qcs/types.hpp"

namespace qcs {

// Flags carried on estimate reports and output rows.
namespace flag {
inline constexpr const char* kClamped = "clamped";
inline constexpr const char* kNearSingular = "near_singular";
inline constexpr const char* kInsufficientData = "insufficient_data";
inline constexpr const char* kTwoFreqResolved = "two_freq_resolved";
inline constexpr const char* kTwoFreqAmbiguous = "two_freq_ambiguous";
inline constexpr const char* kTwoFreqInconsistent = "two_freq_inconsistent";
inline constexpr const char* kBasisMisalignEquivPhase = "basis_misalign_equiv_phase";
}  // namespace flag

/// Agreement statistics between one publisher/receiver pair for all sets
/// sharing a frequency tag.
struct AgreementCounts {
  std::int64_t n_agree = 0;
  std::int64_t n_total = 0;
  std::string freq_tag;
};

/// Matches two record lists on set_id and counts outcome agreement, pooled
/// over both publisher outcomes (the agreement probability is the same for
/// either). Returns one entry per frequency tag present, sorted by tag.
/// Throws if matched records disagree on a set's tag.
std::vector<AgreementCounts> tally_agreement(const std::vector<BulletinRecord>& published,
                                             const std::vector<BulletinRecord>& local);

struct CosEstimate {
  double c_hat = 0.0;
  bool clamped = false;  // raw estimate fell outside [-1, 1]
};

/// Inverts the agreement law f = 1/2 + cos(w delta)/n for cos(w delta):
/// c_hat = n (f - 1/2), clamped to [-1, 1] with the clamp flagged.
CosEstimate estimate_cos_from_frequency(double agree_frequency, int parties);
CosEstimate estimate_cos(const AgreementCounts& counts, int parties);

/// Time window the offset is known a priori to lie in. Half-open [lo, hi);
/// must satisfy -2 pi / w <= lo < hi <= 2 pi / w for the frequency used.
struct Window {
  double lo = 0.0;
  double hi = 0.0;
};

struct OffsetCandidates {
  double principal = 0.0;            // arccos(c_hat) / w, in [0, pi/w]
  std::vector<double> magnitudes;    // |candidate| for all window candidates
};

/// Enumerates every offset consistent with cos(w delta) = c_hat inside the
/// window: +-principal + 2 pi k / w. Candidates are reported as magnitudes
/// (the protocol is insensitive to sign), deduplicated and sorted. c_hat must
/// lie in [-1, 1] up to 1e-12 slack.
OffsetCandidates invert_to_offset(double c_hat, QubitFrequency freq, const Window& window);

struct StdErrorEstimate {
  double sigma = 0.0;           // infinite when near_singular
  bool near_singular = false;   // |sin(w delta_hat)| < 1e-6
};

/// Delta-method standard error of the offset estimate:
///   sigma = n sqrt(p (1-p) / M) / (w |sin(w delta_hat)|),
/// with p = 1/2 + cos(w delta_hat)/n. Grows linearly with n, the accuracy
/// cost of spreading one excitation over more parties.
StdErrorEstimate predicted_std_error(int parties, std::int64_t sets, QubitFrequency freq,
                                     double delta_hat);

/// Everything a receiver learns about its offset from one frequency tag.
struct EstimateReport {
  double c_hat = 0.0;
  std::vector<double> delta_candidates;  // magnitudes, window-filtered, sorted
  double principal_delta = 0.0;
  double std_error = 0.0;                // +inf when undefined
  std::int64_t n_sets_used = 0;
  std::vector<std::string> flags;

  bool has_flag(const char* f) const;
};

/// Builds the single-frequency report: cosine estimate, candidate inversion,
/// predicted error, and flags. Zero usable sets yields an empty candidate
/// list flagged insufficient_data instead of an error.
EstimateReport make_report(const AgreementCounts& counts, int parties, QubitFrequency freq,
                           const Window& window);

enum class ResolutionStatus { Resolved, Ambiguous, Inconsistent };

struct TwoFreqResult {
  ResolutionStatus status = ResolutionStatus::Inconsistent;
  double resolved = 0.0;           // meaningful when status == Resolved
  std::vector<double> survivors;   // candidates surviving the intersection
};

/// Intersects the candidate sets of two reports taken at distinct
/// frequencies: a candidate survives if the two sets contain values within
/// tol of each other (the survivor is their midpoint). One survivor resolves
/// the offset; several leave it ambiguous; none means the reports are
/// mutually inconsistent (wrong window or excess noise).
TwoFreqResult two_frequency_resolve(const EstimateReport& r1, const EstimateReport& r2,
                                    QubitFrequency f1, QubitFrequency f2,
                                    const Window& window, double tol);

/// JSON serialization of a report; field order and formatting are stable.
std::string report_to_json(const EstimateReport& r);
void write_report(std::ostream& out, const EstimateReport& r);

}  // namespace qcs
