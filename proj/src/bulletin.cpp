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

#include "qcs/bulletin.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "qcs/io_util.hpp"

namespace qcs {

Bulletin::Bulletin(Bulletin&& other) noexcept {
  std::lock_guard<std::mutex> lock(other.mu_);
  records_ = std::move(other.records_);
  index_ = std::move(other.index_);
  indexed_ = other.indexed_;
}

Bulletin& Bulletin::operator=(Bulletin&& other) noexcept {
  if (this != &other) {
    std::scoped_lock lock(mu_, other.mu_);
    records_ = std::move(other.records_);
    index_ = std::move(other.index_);
    indexed_ = other.indexed_;
  }
  return *this;
}

std::uint64_t Bulletin::key_of(std::int64_t set_id, int party_id) {
  // set_id up to 2^43, party_id up to 2^20; both far beyond practical sizes.
  return (static_cast<std::uint64_t>(set_id) << 20) ^ static_cast<std::uint64_t>(party_id);
}

Bulletin Bulletin::from_records(std::vector<BulletinRecord>&& records) {
  Bulletin b;
  b.records_ = std::move(records);
  b.indexed_ = false;  // index built on demand if checked appends follow
  return b;
}

void Bulletin::ensure_index_locked() {
  if (indexed_) return;
  index_.clear();
  index_.reserve(records_.size() * 2);
  for (std::uint32_t i = 0; i < records_.size(); ++i) {
    const BulletinRecord& r = records_[i];
    auto [it, fresh] = index_.emplace(key_of(r.set_id, r.party_id), i);
    if (!fresh && !(records_[it->second] == r)) {
      throw std::invalid_argument("bulletin: conflicting records for set " +
                                  std::to_string(r.set_id) + ", party " +
                                  std::to_string(r.party_id));
    }
  }
  indexed_ = true;
}

void Bulletin::publish(const BulletinRecord& r) {
  if (r.outcome != 1 && r.outcome != -1) {
    throw std::invalid_argument("bulletin: outcome must be +1 or -1");
  }
  if (r.set_id < 0 || r.party_id < 0) {
    throw std::invalid_argument("bulletin: set and party ids must be non-negative");
  }
  std::lock_guard<std::mutex> lock(mu_);
  ensure_index_locked();
  auto [it, fresh] = index_.emplace(key_of(r.set_id, r.party_id),
                                    static_cast<std::uint32_t>(records_.size()));
  if (!fresh) {
    if (records_[it->second] == r) return;  // idempotent re-publish
    throw std::invalid_argument("bulletin: conflicting record for set " +
                                std::to_string(r.set_id) + ", party " +
                                std::to_string(r.party_id));
  }
  records_.push_back(r);
}

std::vector<BulletinRecord> Bulletin::fetch(int party_id) const {
  std::vector<BulletinRecord> out;
  {
    std::lock_guard<std::mutex> lock(mu_);
    for (const BulletinRecord& r : records_) {
      if (r.party_id == party_id) out.push_back(r);
    }
  }
  // Publication usually happens in set order, so the common case skips the sort.
  auto by_set = [](const BulletinRecord& a, const BulletinRecord& b) {
    return a.set_id < b.set_id;
  };
  if (!std::is_sorted(out.begin(), out.end(), by_set)) {
    std::sort(out.begin(), out.end(), by_set);
  }
  return out;
}

std::vector<BulletinRecord> Bulletin::all_sorted() const {
  std::vector<BulletinRecord> out;
  {
    std::lock_guard<std::mutex> lock(mu_);
    out = records_;
  }
  std::sort(out.begin(), out.end(), [](const BulletinRecord& a, const BulletinRecord& b) {
    if (a.set_id != b.set_id) return a.set_id < b.set_id;
    return a.party_id < b.party_id;
  });
  return out;
}

std::size_t Bulletin::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return records_.size();
}

void write_bulletin(std::ostream& out, const Bulletin& b) {
  // Hand-assembled lines: field order and byte layout must never drift.
  for (const BulletinRecord& r : b.all_sorted()) {
    out << "{\"set\":" << format_int(r.set_id) << ",\"party\":" << format_int(r.party_id)
        << ",\"outcome\":" << format_int(r.outcome) << ",\"freq\":\"" << r.freq_tag << "\"}\n";
  }
}

Bulletin read_bulletin(std::istream& in) {
  Bulletin b;
  std::string line;
  std::int64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw std::runtime_error("bulletin line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("set") || !j.contains("party") ||
        !j.contains("outcome") || !j.contains("freq")) {
      throw std::runtime_error("bulletin line " + std::to_string(line_no) +
                               ": expected keys set, party, outcome, freq");
    }
    if (!j["set"].is_number_integer() || !j["party"].is_number_integer() ||
        !j["outcome"].is_number_integer() || !j["freq"].is_string()) {
      throw std::runtime_error("bulletin line " + std::to_string(line_no) + ": bad field type");
    }
    BulletinRecord r;
    r.set_id = j["set"].get<std::int64_t>();
    r.party_id = j["party"].get<int>();
    r.outcome = j["outcome"].get<int>();
    r.freq_tag = j["freq"].get<std::string>();
    try {
      b.publish(r);
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error("bulletin line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return b;
}

void save_bulletin(const std::string& path, const Bulletin& b) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  write_bulletin(out, b);
  if (!out) throw std::runtime_error("write failed: " + path);
}

Bulletin load_bulletin(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  return read_bulletin(in);
}

}  // namespace qcs
