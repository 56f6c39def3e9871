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

#include "qcs/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>
#include <stdexcept>

#include "json.hpp"
#include "qcs/io_util.hpp"

namespace qcs {

namespace {

constexpr double kTwoPi = 6.283185307179586476925287;

bool sorted_by_set(const std::vector<BulletinRecord>& v) {
  return std::is_sorted(v.begin(), v.end(), [](const BulletinRecord& a, const BulletinRecord& b) {
    return a.set_id < b.set_id;
  });
}

void check_window(const Window& w, double omega) {
  const double lim = kTwoPi / omega;
  const double slack = 1e-9 * (1.0 + lim);
  if (!(std::isfinite(w.lo) && std::isfinite(w.hi) && w.lo < w.hi)) {
    throw std::invalid_argument("window: need finite lo < hi");
  }
  if (w.lo < -lim - slack || w.hi > lim + slack) {
    throw std::invalid_argument("window: must lie within (-2 pi / omega, 2 pi / omega]");
  }
}

// A shared prior window may exceed one frequency's invertible range (e.g. a
// two-frequency window sized for the slower drive); candidates for each
// frequency live in the intersection.
Window clip_window(const Window& w, double omega) {
  const double lim = kTwoPi / omega;
  return Window{std::max(w.lo, -lim), std::min(w.hi, lim)};
}

}  // namespace

std::vector<AgreementCounts> tally_agreement(const std::vector<BulletinRecord>& published,
                                             const std::vector<BulletinRecord>& local) {
  std::vector<BulletinRecord> pub_sorted, loc_sorted;
  const std::vector<BulletinRecord>* pub = &published;
  const std::vector<BulletinRecord>* loc = &local;
  if (!sorted_by_set(published)) {
    pub_sorted = published;
    std::sort(pub_sorted.begin(), pub_sorted.end(),
              [](const BulletinRecord& a, const BulletinRecord& b) { return a.set_id < b.set_id; });
    pub = &pub_sorted;
  }
  if (!sorted_by_set(local)) {
    loc_sorted = local;
    std::sort(loc_sorted.begin(), loc_sorted.end(),
              [](const BulletinRecord& a, const BulletinRecord& b) { return a.set_id < b.set_id; });
    loc = &loc_sorted;
  }

  // Agreement is pooled over both publisher outcomes: P(match) is the same
  // whether the publisher announced +1 or -1, so no conditioning is needed.
  std::map<std::string, AgreementCounts> by_tag;
  AgreementCounts* slot = nullptr;  // node pointers are stable, so runs of one tag reuse it
  std::size_t a = 0, b = 0;
  while (a < pub->size() && b < loc->size()) {
    const BulletinRecord& rp = (*pub)[a];
    const BulletinRecord& rl = (*loc)[b];
    if (rp.set_id < rl.set_id) {
      ++a;
    } else if (rl.set_id < rp.set_id) {
      ++b;
    } else {
      if (rp.freq_tag != rl.freq_tag) {
        throw std::runtime_error("tally_agreement: set " + std::to_string(rp.set_id) +
                                 " has mismatched frequency tags");
      }
      if (slot == nullptr || slot->freq_tag != rp.freq_tag) {
        slot = &by_tag[rp.freq_tag];
        slot->freq_tag = rp.freq_tag;
      }
      ++slot->n_total;
      if (rp.outcome == rl.outcome) ++slot->n_agree;
      ++a;
      ++b;
    }
  }

  std::vector<AgreementCounts> out;
  out.reserve(by_tag.size());
  for (auto& [tag, counts] : by_tag) out.push_back(counts);
  return out;  // std::map iteration is already tag-sorted
}

CosEstimate estimate_cos_from_frequency(double agree_frequency, int parties) {
  if (parties < 2) throw std::invalid_argument("estimate_cos: need n >= 2");
  if (!(agree_frequency >= 0.0 && agree_frequency <= 1.0)) {
    throw std::invalid_argument("estimate_cos: agreement frequency must be in [0, 1]");
  }
  CosEstimate e;
  double raw = double(parties) * (agree_frequency - 0.5);
  e.c_hat = std::clamp(raw, -1.0, 1.0);
  e.clamped = raw != e.c_hat;
  return e;
}

CosEstimate estimate_cos(const AgreementCounts& counts, int parties) {
  if (counts.n_total <= 0) {
    throw std::invalid_argument("estimate_cos: no sets tallied");
  }
  if (counts.n_agree < 0 || counts.n_agree > counts.n_total) {
    throw std::invalid_argument("estimate_cos: inconsistent counts");
  }
  return estimate_cos_from_frequency(double(counts.n_agree) / double(counts.n_total), parties);
}

OffsetCandidates invert_to_offset(double c_hat, QubitFrequency freq, const Window& window) {
  if (!(c_hat >= -1.0 - kAlgebraTol && c_hat <= 1.0 + kAlgebraTol)) {
    throw std::invalid_argument("invert_to_offset: c_hat outside [-1, 1]");
  }
  check_window(window, freq.omega);
  const double c = std::clamp(c_hat, -1.0, 1.0);
  const double period = kTwoPi / freq.omega;

  OffsetCandidates out;
  out.principal = std::acos(c) / freq.omega;

  // cos(w d) = c has solutions d = +-principal + k period; three periods
  // cover any admissible window.
  for (int sign : {1, -1}) {
    for (int k = -1; k <= 1; ++k) {
      const double d = sign * out.principal + k * period;
      if (d >= window.lo && d < window.hi) out.magnitudes.push_back(std::abs(d));
    }
  }
  std::sort(out.magnitudes.begin(), out.magnitudes.end());
  out.magnitudes.erase(std::unique(out.magnitudes.begin(), out.magnitudes.end(),
                                   [](double x, double y) {
                                     return std::abs(x - y) <= 1e-12 * (1.0 + std::abs(x));
                                   }),
                       out.magnitudes.end());
  return out;
}

StdErrorEstimate predicted_std_error(int parties, std::int64_t sets, QubitFrequency freq,
                                     double delta_hat) {
  if (parties < 2) throw std::invalid_argument("predicted_std_error: need n >= 2");
  if (sets < 1) throw std::invalid_argument("predicted_std_error: need at least one set");
  const double p = 0.5 + std::cos(freq.omega * delta_hat) / double(parties);
  const double var_f = p * (1.0 - p) / double(sets);
  const double slope = std::abs(std::sin(freq.omega * delta_hat));

  StdErrorEstimate e;
  e.near_singular = slope < 1e-6;
  e.sigma = e.near_singular ? std::numeric_limits<double>::infinity()
                            : double(parties) * std::sqrt(var_f) / (freq.omega * slope);
  return e;
}

bool EstimateReport::has_flag(const char* f) const {
  return std::find(flags.begin(), flags.end(), f) != flags.end();
}

EstimateReport make_report(const AgreementCounts& counts, int parties, QubitFrequency freq,
                           const Window& window) {
  EstimateReport rep;
  rep.n_sets_used = counts.n_total;
  if (counts.n_total <= 0) {
    rep.std_error = std::numeric_limits<double>::infinity();
    rep.flags.push_back(flag::kInsufficientData);
    return rep;
  }
  CosEstimate est = estimate_cos(counts, parties);
  rep.c_hat = est.c_hat;
  if (est.clamped) rep.flags.push_back(flag::kClamped);

  OffsetCandidates cand = invert_to_offset(est.c_hat, freq, clip_window(window, freq.omega));
  rep.principal_delta = cand.principal;
  rep.delta_candidates = std::move(cand.magnitudes);

  StdErrorEstimate se = predicted_std_error(parties, counts.n_total, freq, rep.principal_delta);
  rep.std_error = se.sigma;
  if (se.near_singular) rep.flags.push_back(flag::kNearSingular);
  return rep;
}

TwoFreqResult two_frequency_resolve(const EstimateReport& r1, const EstimateReport& r2,
                                    QubitFrequency f1, QubitFrequency f2, const Window& window,
                                    double tol) {
  if (std::abs(f1.omega - f2.omega) <= 1e-12 * std::max(f1.omega, f2.omega)) {
    throw std::invalid_argument("two_frequency_resolve: frequencies must be distinct");
  }
  if (!(tol >= 0.0) || !std::isfinite(tol)) {
    throw std::invalid_argument("two_frequency_resolve: tol must be finite and >= 0");
  }
  // Candidate sets are re-derived from c_hat against the shared window so the
  // two reports are compared on equal footing even if they were built with
  // narrower windows.  Each set is clipped to its own invertible range.
  const std::vector<double> cand1 =
      invert_to_offset(r1.c_hat, f1, clip_window(window, f1.omega)).magnitudes;
  const std::vector<double> cand2 =
      invert_to_offset(r2.c_hat, f2, clip_window(window, f2.omega)).magnitudes;

  TwoFreqResult out;
  for (double a : cand1) {
    for (double b : cand2) {
      if (std::abs(a - b) <= tol) out.survivors.push_back(0.5 * (a + b));
    }
  }
  std::sort(out.survivors.begin(), out.survivors.end());
  out.survivors.erase(std::unique(out.survivors.begin(), out.survivors.end(),
                                  [&](double x, double y) { return std::abs(x - y) <= tol; }),
                      out.survivors.end());

  if (out.survivors.empty()) {
    out.status = ResolutionStatus::Inconsistent;
  } else if (out.survivors.size() == 1) {
    out.status = ResolutionStatus::Resolved;
    out.resolved = out.survivors.front();
  } else {
    out.status = ResolutionStatus::Ambiguous;
  }
  return out;
}

std::string report_to_json(const EstimateReport& r) {
  nlohmann::ordered_json j;
  j["c_hat"] = r.c_hat;
  j["delta_candidates"] = r.delta_candidates;
  j["principal_delta"] = r.principal_delta;
  if (std::isfinite(r.std_error)) {
    j["std_error"] = r.std_error;
  } else {
    j["std_error"] = nullptr;
  }
  j["n_sets_used"] = r.n_sets_used;
  j["flags"] = r.flags;
  return j.dump(2);
}

void write_report(std::ostream& out, const EstimateReport& r) {
  out << report_to_json(r) << "\n";
}

}  // namespace qcs
