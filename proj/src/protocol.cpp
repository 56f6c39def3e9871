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

#include "qcs/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qcs/noise.hpp"
#include "qcs/rng.hpp"
#include "qcs/sampler.hpp"

namespace qcs {

namespace {
constexpr std::uint64_t kMeasureSalt = 0;
}

Bulletin run_protocol(const ExperimentConfig& cfg) {
  cfg.validate();

  std::vector<Party> parties;
  parties.reserve(static_cast<size_t>(cfg.parties));
  for (int i = 0; i < cfg.parties; ++i) parties.push_back({i, cfg.offset_of(i)});

  // Every party measures at its own local zero; in standard time that is its
  // clock offset, which is exactly the signal the estimator later recovers.
  MeasurementSchedule sched;
  sched.entries.reserve(parties.size());
  for (const Party& p : parties) sched.entries.push_back({p.id, p.clock_offset});
  validate_schedule(sched, cfg.parties);

  const bool noisy =
      cfg.phase_noise.kind != NoiseSpec::Kind::None || cfg.has_basis_misalign();
  const SingleExcitationState clean = w_state(cfg.parties);
  const QubitFrequency f1 = cfg.freq1();
  const QubitFrequency f2 = cfg.two_frequency() ? cfg.freq2() : f1;

  std::vector<BulletinRecord> records;
  records.reserve(static_cast<size_t>(cfg.sets) * static_cast<size_t>(cfg.parties));

  SimState ws;
  for (std::int64_t set_id = 0; set_id < cfg.sets; ++set_id) {
    const char* tag = cfg.freq_tag_of_set(set_id);
    const QubitFrequency freq = (tag[1] == '1') ? f1 : f2;
    Rng rng = Rng::substream(cfg.seed, static_cast<std::uint64_t>(set_id), kMeasureSalt);

    ws.reset(noisy ? apply_noise(cfg, set_id) : clean, freq);
    for (const ScheduleEntry& e : sched.entries) {
      const int outcome = ws.measure(e.qubit, e.time, rng);
      records.push_back({set_id, e.qubit, outcome, tag});
    }
  }
  // Keys (set, party) are unique by construction of the two loops.
  return Bulletin::from_records(std::move(records));
}

namespace {

// Intersection tolerance for two-frequency resolution: the predicted offset
// error of each report, with |sin| floored so the tolerance stays finite at
// the inversion's singular points.
double resolution_tolerance(const EstimateReport& r, int parties, QubitFrequency freq) {
  if (r.n_sets_used < 1) return 0.05;
  const double p = 0.5 + std::cos(freq.omega * r.principal_delta) / double(parties);
  const double slope = std::max(std::abs(std::sin(freq.omega * r.principal_delta)), 0.05);
  return double(parties) * std::sqrt(p * (1.0 - p) / double(r.n_sets_used)) /
         (freq.omega * slope);
}

}  // namespace

SyncDetail synchronize_detailed(const std::vector<BulletinRecord>& local,
                                const std::vector<BulletinRecord>& published, int parties,
                                const std::vector<QubitFrequency>& omegas,
                                const Window& window) {
  if (omegas.empty() || omegas.size() > 2) {
    throw std::invalid_argument("synchronize: need one or two frequencies");
  }
  std::vector<AgreementCounts> tallies = tally_agreement(published, local);
  if (tallies.empty()) {
    throw std::invalid_argument("synchronize: record lists share no set ids");
  }

  SyncDetail detail;
  for (const AgreementCounts& counts : tallies) {
    std::size_t which;
    if (counts.freq_tag == "w1") {
      which = 0;
    } else if (counts.freq_tag == "w2") {
      which = 1;
    } else {
      throw std::invalid_argument("synchronize: unknown frequency tag '" + counts.freq_tag +
                                  "'");
    }
    if (which >= omegas.size()) {
      throw std::invalid_argument("synchronize: records carry tag '" + counts.freq_tag +
                                  "' but no matching frequency was given");
    }
    detail.per_frequency.push_back(make_report(counts, parties, omegas[which], window));
  }

  detail.combined = detail.per_frequency.front();
  if (detail.per_frequency.size() == 2) {
    const EstimateReport& r1 = detail.per_frequency[0];
    const EstimateReport& r2 = detail.per_frequency[1];
    const double tol = std::max(
        1e-9, 3.0 * (resolution_tolerance(r1, parties, omegas[0]) +
                     resolution_tolerance(r2, parties, omegas[1])));
    TwoFreqResult res = two_frequency_resolve(r1, r2, omegas[0], omegas[1], window, tol);
    detail.resolution = res;

    detail.combined.n_sets_used = r1.n_sets_used + r2.n_sets_used;
    switch (res.status) {
      case ResolutionStatus::Resolved:
        detail.combined.delta_candidates = {res.resolved};
        detail.combined.principal_delta = res.resolved;
        detail.combined.flags.push_back(flag::kTwoFreqResolved);
        break;
      case ResolutionStatus::Ambiguous:
        detail.combined.delta_candidates = res.survivors;
        detail.combined.flags.push_back(flag::kTwoFreqAmbiguous);
        break;
      case ResolutionStatus::Inconsistent:
        detail.combined.flags.push_back(flag::kTwoFreqInconsistent);
        break;
    }
  }
  return detail;
}

EstimateReport synchronize(const std::vector<BulletinRecord>& local,
                           const std::vector<BulletinRecord>& published, int parties,
                           const std::vector<QubitFrequency>& omegas, const Window& window) {
  return synchronize_detailed(local, published, parties, omegas, window).combined;
}

}  // namespace qcs
