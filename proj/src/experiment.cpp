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

#include "qcs/experiment.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "qcs/io_util.hpp"
#include "qcs/rng.hpp"

namespace qcs {

namespace {

ExperimentRow estimate_row(const ExperimentConfig& cfg, int receiver,
                           const std::vector<BulletinRecord>& published,
                           const std::vector<BulletinRecord>& local,
                           const std::vector<QubitFrequency>& omegas, const Window& window) {
  ExperimentRow row;
  row.receiver = receiver;
  row.true_delta = cfg.offset_of(receiver) - cfg.offset_of(0);

  if (published.empty() || local.empty()) {
    row.report.std_error = std::numeric_limits<double>::infinity();
    row.report.flags.push_back(flag::kInsufficientData);
  } else {
    SyncDetail detail = synchronize_detailed(local, published, cfg.parties, omegas, window);
    row.report = std::move(detail.combined);
    row.resolution = std::move(detail.resolution);
  }
  if (cfg.has_basis_misalign()) {
    row.report.flags.push_back(flag::kBasisMisalignEquivPhase);
  }
  return row;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();

  ExperimentResult result;
  result.bulletin = run_protocol(cfg);

  std::vector<QubitFrequency> omegas = {cfg.freq1()};
  if (cfg.two_frequency()) omegas.push_back(cfg.freq2());
  const Window window = cfg.effective_window();
  const std::vector<BulletinRecord> published = result.bulletin.fetch(0);

  for (int r = 1; r < cfg.parties; ++r) {
    result.rows.push_back(
        estimate_row(cfg, r, published, result.bulletin.fetch(r), omegas, window));
  }
  return result;
}

SweepAxis parse_sweep_axis(const std::string& name) {
  if (name == "n") return SweepAxis::Parties;
  if (name == "M") return SweepAxis::Sets;
  if (name == "delta") return SweepAxis::Delta;
  if (name == "phase_noise_scale") return SweepAxis::PhaseNoiseScale;
  throw config_error("axis: expected n, M, delta or phase_noise_scale, got '" + name + "'");
}

const char* sweep_axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::Parties:
      return "n";
    case SweepAxis::Sets:
      return "M";
    case SweepAxis::Delta:
      return "delta";
    case SweepAxis::PhaseNoiseScale:
      return "phase_noise_scale";
  }
  return "?";
}

namespace {

std::int64_t integral_axis_value(double v, const char* axis) {
  double rounded = std::nearbyint(v);
  if (!(std::isfinite(v)) || std::abs(v - rounded) > 1e-9) {
    throw config_error(std::string("sweep ") + axis + " axis: value " + format_double(v) +
                       " is not an integer");
  }
  return static_cast<std::int64_t>(rounded);
}

ExperimentConfig config_at(const ExperimentConfig& base, SweepAxis axis, double value) {
  ExperimentConfig cfg = base;
  switch (axis) {
    case SweepAxis::Parties: {
      const std::int64_t n = integral_axis_value(value, "n");
      if (n < 2) throw config_error("sweep n axis: need n >= 2");
      if (cfg.phase_noise.kind == NoiseSpec::Kind::Fixed) {
        throw config_error("sweep n axis: fixed phase lists do not extend across n; "
                           "use none or gauss noise");
      }
      if (!cfg.basis_misalign.empty()) {
        throw config_error("sweep n axis: per-party basis_misalign does not extend across n");
      }
      // Publisher keeps its offset; every receiver inherits the base
      // receiver's, so the measured pair stays comparable across n.
      if (!cfg.offsets.empty()) {
        const double pub = base.offset_of(0);
        const double recv = base.parties >= 2 ? base.offset_of(1) : 0.0;
        cfg.offsets.assign(static_cast<size_t>(n), recv);
        cfg.offsets[0] = pub;
      }
      cfg.parties = static_cast<int>(n);
      break;
    }
    case SweepAxis::Sets:
      cfg.sets = integral_axis_value(value, "M");
      if (cfg.sets < 0) throw config_error("sweep M axis: need M >= 0");
      break;
    case SweepAxis::Delta: {
      if (!std::isfinite(value)) throw config_error("sweep delta axis: non-finite value");
      if (cfg.offsets.empty()) cfg.offsets.assign(static_cast<size_t>(cfg.parties), 0.0);
      if (cfg.parties < 2) throw config_error("sweep delta axis: need at least 2 parties");
      cfg.offsets[1] = value;
      break;
    }
    case SweepAxis::PhaseNoiseScale:
      if (!(std::isfinite(value) && value >= 0.0)) {
        throw config_error("sweep phase_noise_scale axis: need a finite value >= 0");
      }
      cfg.phase_noise.kind = NoiseSpec::Kind::Gauss;
      cfg.phase_noise.phases.clear();
      cfg.phase_noise.sigma = value;
      break;
  }
  return cfg;
}

SweepRow row_of_trial(const ExperimentConfig& cfg, double axis_value, int trial) {
  // A sweep trial scores receiver 1 against publisher 0 only; estimating the
  // other receivers as run_experiment does would multiply the per-trial cost
  // by n - 1 for no benefit.
  cfg.validate();
  const Bulletin board = run_protocol(cfg);
  std::vector<QubitFrequency> omegas = {cfg.freq1()};
  if (cfg.two_frequency()) omegas.push_back(cfg.freq2());
  const ExperimentRow row = estimate_row(cfg, 1, board.fetch(0), board.fetch(1), omegas,
                                         cfg.effective_window());

  SweepRow out;
  out.axis_value = axis_value;
  out.trial = trial;
  out.true_delta = row.true_delta;
  out.delta_hat = row.report.principal_delta;
  if (row.resolution && row.resolution->status == ResolutionStatus::Resolved) {
    out.delta_hat = row.resolution->resolved;
  }
  out.error = out.delta_hat - std::abs(row.true_delta);
  out.predicted_sigma = row.report.std_error;
  out.c_hat = row.report.c_hat;
  out.flags = row.report.flags;
  return out;
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepSpec& spec, const ExperimentConfig& base) {
  if (spec.values.empty()) throw config_error("sweep: no axis values given");
  if (spec.trials < 1) throw config_error("sweep: trials must be >= 1");
  base.validate();

  // Per-cell configs are prepared up front so axis errors surface before any
  // work starts.
  std::vector<ExperimentConfig> cell_config;
  cell_config.reserve(spec.values.size());
  for (double v : spec.values) cell_config.push_back(config_at(base, spec.axis, v));

  const std::size_t total = spec.values.size() * static_cast<std::size_t>(spec.trials);
  std::vector<SweepRow> rows(total);

  // Cells are independent: each gets a seed derived from (base seed, value
  // index, trial), so the result is identical for any thread count.
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= total) return;
      const std::size_t vi = idx / static_cast<std::size_t>(spec.trials);
      const int trial = static_cast<int>(idx % static_cast<std::size_t>(spec.trials));
      ExperimentConfig cfg = cell_config[vi];
      cfg.seed = derive_stream_seed(base.seed, vi + 1, static_cast<std::uint64_t>(trial));
      rows[idx] = row_of_trial(cfg, spec.values[vi], trial);
    }
  };

  unsigned hw = std::thread::hardware_concurrency();
  std::size_t want = spec.threads > 0 ? static_cast<std::size_t>(spec.threads)
                                      : static_cast<std::size_t>(hw ? hw : 1);
  want = std::min(want, total);
  if (want <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(want);
    for (std::size_t i = 0; i < want; ++i) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  return rows;
}

namespace {

std::string candidates_cell(const std::vector<double>& values) {
  std::vector<std::string> parts;
  parts.reserve(values.size());
  for (double v : values) parts.push_back(format_double(v));
  return join(parts, ';');
}

}  // namespace

void write_experiment_csv(std::ostream& out, const std::vector<ExperimentRow>& rows) {
  out << "receiver,true_delta,c_hat,principal_delta,delta_candidates,resolved_delta,"
         "std_error,n_sets,flags\n";
  for (const ExperimentRow& row : rows) {
    std::string resolved;
    if (row.resolution && row.resolution->status == ResolutionStatus::Resolved) {
      resolved = format_double(row.resolution->resolved);
    }
    out << format_int(row.receiver) << ',' << format_double(row.true_delta) << ','
        << format_double(row.report.c_hat) << ',' << format_double(row.report.principal_delta)
        << ',' << candidates_cell(row.report.delta_candidates) << ',' << resolved << ','
        << format_double(row.report.std_error) << ',' << format_int(row.report.n_sets_used)
        << ',' << join(row.report.flags, ';') << '\n';
  }
}

void write_sweep_csv(std::ostream& out, SweepAxis axis, const std::vector<SweepRow>& rows) {
  out << "axis,value,trial,true_delta,delta_hat,error,predicted_std_error,c_hat,flags\n";
  const char* axis_name = sweep_axis_name(axis);
  for (const SweepRow& row : rows) {
    out << axis_name << ',' << format_double(row.axis_value) << ',' << format_int(row.trial)
        << ',' << format_double(row.true_delta) << ',' << format_double(row.delta_hat) << ','
        << format_double(row.error) << ',' << format_double(row.predicted_sigma) << ','
        << format_double(row.c_hat) << ',' << join(row.flags, ';') << '\n';
  }
}

}  // namespace qcs
