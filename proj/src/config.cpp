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

#include "qcs/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace qcs {

namespace {

constexpr double kTwoPi = 6.283185307179586476925287;

double parse_one_double(std::string_view text, const char* field) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc() || res.ptr != last || !std::isfinite(value)) {
    throw config_error(std::string(field) + ": cannot parse number from '" +
                       std::string(text) + "'");
  }
  return value;
}

}  // namespace

std::vector<double> parse_double_list(const std::string& text, const char* field) {
  std::vector<double> out;
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = text.find(',', start);
    std::string_view piece(text.data() + start,
                           (comma == std::string::npos ? text.size() : comma) - start);
    out.push_back(parse_one_double(piece, field));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

NoiseSpec NoiseSpec::parse(const std::string& text) {
  NoiseSpec spec;
  if (text.empty() || text == "none") return spec;
  if (text.rfind("fixed:", 0) == 0) {
    spec.kind = Kind::Fixed;
    spec.phases = parse_double_list(text.substr(6), "phase_noise");
    if (spec.phases.empty()) throw config_error("phase_noise: fixed: needs a phase list");
    return spec;
  }
  if (text.rfind("gauss:", 0) == 0) {
    spec.kind = Kind::Gauss;
    spec.sigma = parse_one_double(text.substr(6), "phase_noise");
    if (spec.sigma < 0.0) throw config_error("phase_noise: sigma must be >= 0");
    return spec;
  }
  throw config_error("phase_noise: expected none, fixed:<list> or gauss:<sigma>, got '" + text +
                     "'");
}

std::string NoiseSpec::to_string() const {
  switch (kind) {
    case Kind::None:
      return "none";
    case Kind::Fixed: {
      std::string out = "fixed:";
      for (std::size_t i = 0; i < phases.size(); ++i) {
        if (i) out += ',';
        std::ostringstream ss;
        ss << phases[i];
        out += ss.str();
      }
      return out;
    }
    case Kind::Gauss: {
      std::ostringstream ss;
      ss << "gauss:" << sigma;
      return ss.str();
    }
  }
  return "none";
}

void ExperimentConfig::validate() const {
  std::vector<std::string> problems;
  if (parties < 2) {
    problems.push_back("parties: must be >= 2 (got " + std::to_string(parties) + ")");
  }
  if (sets < 0) {
    problems.push_back("sets: must be >= 0 (got " + std::to_string(sets) + ")");
  }
  if (!(std::isfinite(omega) && omega > 0.0)) {
    problems.push_back("omega: must be finite and > 0");
  }
  if (omega2) {
    if (!(std::isfinite(*omega2) && *omega2 > 0.0)) {
      problems.push_back("omega2: must be finite and > 0");
    } else if (std::isfinite(omega) && omega > 0.0 &&
               std::abs(*omega2 - omega) <= 1e-12 * std::max(omega, *omega2)) {
      problems.push_back("omega2: must differ from omega");
    }
    if (!(freq_split >= 0.0 && freq_split <= 1.0)) {
      problems.push_back("freq_split: must be in [0, 1]");
    }
  }
  if (!offsets.empty() && static_cast<int>(offsets.size()) != parties) {
    problems.push_back("offsets: expected " + std::to_string(parties) + " entries, got " +
                       std::to_string(offsets.size()));
  }
  for (double d : offsets) {
    if (!std::isfinite(d)) {
      problems.push_back("offsets: non-finite entry");
      break;
    }
  }
  if (phase_noise.kind == NoiseSpec::Kind::Fixed &&
      static_cast<int>(phase_noise.phases.size()) != parties) {
    problems.push_back("phase_noise: fixed list needs one phase per party");
  }
  if (phase_noise.kind == NoiseSpec::Kind::Gauss &&
      !(std::isfinite(phase_noise.sigma) && phase_noise.sigma >= 0.0)) {
    problems.push_back("phase_noise: sigma must be finite and >= 0");
  }
  if (!basis_misalign.empty() && static_cast<int>(basis_misalign.size()) != parties) {
    problems.push_back("basis_misalign: expected " + std::to_string(parties) +
                       " entries, got " + std::to_string(basis_misalign.size()));
  }
  for (double d : basis_misalign) {
    if (!std::isfinite(d)) {
      problems.push_back("basis_misalign: non-finite entry");
      break;
    }
  }
  if (window) {
    const double omega_min = omega2 ? std::min(omega, *omega2) : omega;
    if (std::isfinite(omega_min) && omega_min > 0.0) {
      const double lim = kTwoPi / omega_min;
      const double slack = 1e-9 * (1.0 + lim);
      if (!(std::isfinite(window->lo) && std::isfinite(window->hi) && window->lo < window->hi)) {
        problems.push_back("window: need finite lo < hi");
      } else if (window->lo < -lim - slack || window->hi > lim + slack) {
        problems.push_back("window: must lie within (-2 pi / min omega, 2 pi / min omega]");
      }
    }
  }
  if (!problems.empty()) {
    std::string msg = "invalid configuration:";
    for (const std::string& p : problems) msg += "\n  " + p;
    throw config_error(msg);
  }
}

double ExperimentConfig::offset_of(int party) const {
  if (party < 0 || party >= parties) {
    throw std::out_of_range("offset_of: party " + std::to_string(party));
  }
  if (offsets.empty()) return 0.0;
  return offsets[static_cast<size_t>(party)];
}

const char* ExperimentConfig::freq_tag_of_set(std::int64_t set_id) const {
  if (!omega2) return "w1";
  // Deterministic interleave: set k runs at omega2 exactly when the running
  // quota floor((k+1) * split) advances, so any prefix holds the split.
  const double split = freq_split;
  const auto before = static_cast<std::int64_t>(std::floor(double(set_id) * split));
  const auto after = static_cast<std::int64_t>(std::floor(double(set_id + 1) * split));
  return after > before ? "w2" : "w1";
}

QubitFrequency ExperimentConfig::freq_of_tag(const std::string& tag) const {
  if (tag == "w1") return freq1();
  if (tag == "w2" && omega2) return freq2();
  throw config_error("unknown frequency tag '" + tag + "'");
}

Window ExperimentConfig::effective_window() const {
  if (window) return *window;
  const double omega_min = omega2 ? std::min(omega, *omega2) : omega;
  return Window{0.0, kTwoPi / omega_min};
}

bool ExperimentConfig::has_basis_misalign() const {
  return std::any_of(basis_misalign.begin(), basis_misalign.end(),
                     [](double a) { return a != 0.0; });
}

namespace {

void reject_unknown_keys(const nlohmann::json& j) {
  static const char* known[] = {"parties", "sets",  "omega",       "omega2",
                                "freq_split", "offsets", "phase_noise", "basis_misalign",
                                "seed",    "window", "out",        "format"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : known) {
      if (it.key() == k) {
        ok = true;
        break;
      }
    }
    if (!ok) throw config_error("config: unknown key '" + it.key() + "'");
  }
}

std::vector<double> double_list_of(const nlohmann::json& j, const char* field) {
  if (!j.is_array()) throw config_error(std::string(field) + ": expected an array of numbers");
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) {
      throw config_error(std::string(field) + ": expected an array of numbers");
    }
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

LoadedConfig load_config_json(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw config_error(std::string("config: JSON parse failure: ") + e.what());
  }
  if (!j.is_object()) throw config_error("config: top level must be a JSON object");
  reject_unknown_keys(j);

  LoadedConfig loaded;
  ExperimentConfig& cfg = loaded.config;
  try {
    if (j.contains("parties")) cfg.parties = j["parties"].get<int>();
    if (j.contains("sets")) cfg.sets = j["sets"].get<std::int64_t>();
    if (j.contains("omega")) cfg.omega = j["omega"].get<double>();
    if (j.contains("omega2")) cfg.omega2 = j["omega2"].get<double>();
    if (j.contains("freq_split")) cfg.freq_split = j["freq_split"].get<double>();
    if (j.contains("offsets")) cfg.offsets = double_list_of(j["offsets"], "offsets");
    if (j.contains("phase_noise")) {
      cfg.phase_noise = NoiseSpec::parse(j["phase_noise"].get<std::string>());
    }
    if (j.contains("basis_misalign")) {
      cfg.basis_misalign = double_list_of(j["basis_misalign"], "basis_misalign");
    }
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("window")) {
      auto w = double_list_of(j["window"], "window");
      if (w.size() != 2) throw config_error("window: expected [lo, hi]");
      cfg.window = Window{w[0], w[1]};
    }
    if (j.contains("out")) loaded.out = j["out"].get<std::string>();
    if (j.contains("format")) loaded.format = j["format"].get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw config_error(std::string("config: bad field type: ") + e.what());
  }
  return loaded;
}

LoadedConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw config_error("config: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_config_json(ss.str());
}

}  // namespace qcs
