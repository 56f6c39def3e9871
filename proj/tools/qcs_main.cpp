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

#include <algorithm>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qcs/bulletin.hpp"
#include "qcs/config.hpp"
#include "qcs/estimation.hpp"
#include "qcs/experiment.hpp"
#include "qcs/protocol.hpp"
#include "qcs/validate.hpp"

namespace {

// Collects the shared experiment flags of a subcommand. Values become
// authoritative only where the flag was actually passed; precedence is
// flag > config file > built-in default.
struct ConfigCli {
  CLI::App* cmd = nullptr;
  std::string config_path;
  int parties = 0;
  std::int64_t sets = 0;
  double omega = 0.0;
  double omega2 = 0.0;
  double freq_split = 0.0;
  std::string offsets;
  std::uint64_t seed = 0;
  std::string phase_noise;
  std::string basis_misalign;
  std::string window;
  std::string out;
  std::string format = "csv";

  void attach(CLI::App* sub, bool with_format) {
    cmd = sub;
    sub->add_option("--config", config_path, "JSON config file; flags override its fields");
    sub->add_option("--parties", parties, "number of parties n (>= 2)");
    sub->add_option("--sets", sets, "entangled sets to consume (M)");
    sub->add_option("--omega", omega, "qubit angular frequency");
    sub->add_option("--omega2", omega2, "second frequency for ambiguity resolution");
    sub->add_option("--freq-split", freq_split, "fraction of sets run at omega2 (default 0.5)");
    sub->add_option("--offsets", offsets, "per-party clock offsets, comma separated");
    sub->add_option("--seed", seed, "RNG seed (identical seed reproduces the run exactly)");
    sub->add_option("--phase-noise", phase_noise,
                    "none | fixed:<a,b,...> | gauss:<sigma> transport phase noise");
    sub->add_option("--basis-misalign", basis_misalign,
                    "per-party basis rotation angles, folded in as extra phases");
    sub->add_option("--window", window, "prior offset window 'lo,hi'");
    sub->add_option("--out", out, "output file (default stdout)");
    if (with_format) {
      sub->add_option("--format", format, "csv (estimates) or records (bulletin lines)")
          ->check(CLI::IsMember({"csv", "records"}));
    }
  }

  bool passed(const char* flag) const { return cmd->count(flag) > 0; }

  qcs::ExperimentConfig build() const {
    qcs::ExperimentConfig cfg;
    std::optional<std::string> file_out, file_format;
    if (!config_path.empty()) {
      qcs::LoadedConfig loaded = qcs::load_config_file(config_path);
      cfg = loaded.config;
      file_out = loaded.out;
      file_format = loaded.format;
    }
    if (passed("--parties")) cfg.parties = parties;
    if (passed("--sets")) cfg.sets = sets;
    if (passed("--omega")) cfg.omega = omega;
    if (passed("--omega2")) cfg.omega2 = omega2;
    if (passed("--freq-split")) cfg.freq_split = freq_split;
    if (passed("--offsets")) cfg.offsets = qcs::parse_double_list(offsets, "offsets");
    if (passed("--seed")) cfg.seed = seed;
    if (passed("--phase-noise")) cfg.phase_noise = qcs::NoiseSpec::parse(phase_noise);
    if (passed("--basis-misalign")) {
      cfg.basis_misalign = qcs::parse_double_list(basis_misalign, "basis_misalign");
    }
    if (passed("--window")) {
      auto w = qcs::parse_double_list(window, "window");
      if (w.size() != 2) throw qcs::config_error("window: expected 'lo,hi'");
      cfg.window = qcs::Window{w[0], w[1]};
    }
    cfg.validate();
    return cfg;
  }

  // File-provided out/format, used when the flag is absent.
  std::string effective_out() const {
    if (passed("--out") || config_path.empty()) return out;
    qcs::LoadedConfig loaded = qcs::load_config_file(config_path);
    return loaded.out.value_or(out);
  }
  std::string effective_format() const {
    if (passed("--format") || config_path.empty()) return format;
    qcs::LoadedConfig loaded = qcs::load_config_file(config_path);
    return loaded.format.value_or(format);
  }
};

// Writes through to a file when a path is given, stdout otherwise.
struct OutputTarget {
  explicit OutputTarget(const std::string& path) {
    if (!path.empty()) {
      file.open(path, std::ios::binary);
      if (!file) throw qcs::config_error("out: cannot open " + path + " for writing");
    }
  }
  std::ostream& stream() { return file.is_open() ? file : std::cout; }
  void finish(const std::string& path) {
    if (file.is_open()) {
      file.flush();
      if (!file) throw std::runtime_error("write failed: " + path);
    }
  }
  std::ofstream file;
};

int run_simulate(const ConfigCli& opts) {
  qcs::ExperimentConfig cfg = opts.build();
  qcs::ExperimentResult result = qcs::run_experiment(cfg);
  const std::string path = opts.effective_out();
  OutputTarget target(path);
  if (opts.effective_format() == "records") {
    qcs::write_bulletin(target.stream(), result.bulletin);
  } else {
    qcs::write_experiment_csv(target.stream(), result.rows);
  }
  target.finish(path);
  return 0;
}

int run_sweep_cmd(const ConfigCli& opts, const std::string& axis, const std::string& values,
                  int trials) {
  qcs::ExperimentConfig cfg = opts.build();
  qcs::SweepSpec spec;
  spec.axis = qcs::parse_sweep_axis(axis);
  spec.values = qcs::parse_double_list(values, "values");
  spec.trials = trials;
  std::vector<qcs::SweepRow> rows = qcs::run_sweep(spec, cfg);
  const std::string path = opts.effective_out();
  OutputTarget target(path);
  qcs::write_sweep_csv(target.stream(), spec.axis, rows);
  target.finish(path);
  return 0;
}

int run_estimate(const std::string& bulletin_path, int publisher, int receiver, int parties,
                 double omega, std::optional<double> omega2, const std::string& window_text,
                 const std::string& out_path) {
  qcs::Bulletin board = qcs::load_bulletin(bulletin_path);
  if (publisher == receiver) {
    throw qcs::config_error("receiver: must differ from publisher");
  }

  std::vector<qcs::BulletinRecord> published = board.fetch(publisher);
  std::vector<qcs::BulletinRecord> local = board.fetch(receiver);
  if (published.empty()) {
    throw qcs::config_error("bulletin holds no records for publisher " +
                            std::to_string(publisher));
  }
  if (local.empty()) {
    throw qcs::config_error("bulletin holds no records for receiver " +
                            std::to_string(receiver));
  }

  if (parties == 0) {
    for (const qcs::BulletinRecord& r : board.all_sorted()) {
      parties = std::max(parties, r.party_id + 1);
    }
  }
  if (parties < 2) throw qcs::config_error("parties: must be >= 2");

  std::vector<qcs::QubitFrequency> omegas = {qcs::QubitFrequency(omega)};
  if (omega2) omegas.push_back(qcs::QubitFrequency(*omega2));

  qcs::Window window;
  if (!window_text.empty()) {
    auto w = qcs::parse_double_list(window_text, "window");
    if (w.size() != 2) throw qcs::config_error("window: expected 'lo,hi'");
    window = qcs::Window{w[0], w[1]};
  } else {
    double omega_min = omega;
    for (const qcs::QubitFrequency& f : omegas) omega_min = std::min(omega_min, f.omega);
    window = qcs::Window{0.0, 6.283185307179586476925287 / omega_min};
  }

  qcs::EstimateReport report = qcs::synchronize(local, published, parties, omegas, window);
  OutputTarget target(out_path);
  qcs::write_report(target.stream(), report);
  target.finish(out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulator and estimator for entanglement-assisted clock synchronization"};
  app.require_subcommand(1);

  ConfigCli sim_opts;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "run the protocol once and write estimates or raw records");
  sim_opts.attach(simulate, /*with_format=*/true);

  ConfigCli sweep_opts;
  std::string axis, values;
  int trials = 200;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "Monte Carlo accuracy sweep over n, M, delta or phase_noise_scale");
  sweep_opts.attach(sweep, /*with_format=*/false);
  sweep->add_option("--axis", axis, "n | M | delta | phase_noise_scale")->required();
  sweep->add_option("--values", values, "axis values, comma separated")->required();
  sweep->add_option("--trials", trials, "independent trials per value (default 200)");

  std::string est_bulletin, est_window, est_out;
  int est_publisher = 0, est_receiver = -1, est_parties = 0;
  double est_omega = 0.0, est_omega2 = 0.0;
  CLI::App* estimate = app.add_subcommand(
      "estimate", "estimate a clock offset from a published bulletin file");
  estimate->add_option("--bulletin", est_bulletin, "bulletin records file")->required();
  estimate->add_option("--publisher", est_publisher, "publishing party id (default 0)");
  estimate->add_option("--receiver", est_receiver, "receiving party id")->required();
  estimate->add_option("--parties", est_parties,
                       "total party count; default infers from the bulletin");
  estimate->add_option("--omega", est_omega, "frequency of w1-tagged sets")->required();
  estimate->add_option("--omega2", est_omega2, "frequency of w2-tagged sets");
  estimate->add_option("--window", est_window, "prior offset window 'lo,hi'");
  estimate->add_option("--out", est_out, "output file (default stdout)");

  CLI::App* validate = app.add_subcommand(
      "validate", "run the closed-form and brute-force self-check battery");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
      return app.exit(e);  // --help
    }
    app.exit(e);
    return 2;
  }

  try {
    if (simulate->parsed()) return run_simulate(sim_opts);
    if (sweep->parsed()) return run_sweep_cmd(sweep_opts, axis, values, trials);
    if (estimate->parsed()) {
      std::optional<double> omega2;
      if (estimate->count("--omega2")) omega2 = est_omega2;
      return run_estimate(est_bulletin, est_publisher, est_receiver, est_parties, est_omega,
                          omega2, est_window, est_out);
    }
    if (validate->parsed()) {
      return qcs::checks::run_validation(std::cout) ? 0 : 1;
    }
  } catch (const qcs::config_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
