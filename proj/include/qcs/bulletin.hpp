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
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

namespace qcs {

/// One public classical announcement: party `party_id` measured its qubit of
/// set `set_id` and saw `outcome` (+1 or -1). `freq_tag` names which drive
/// frequency that set was prepared with ("w1", "w2").
struct BulletinRecord {
  std::int64_t set_id = 0;
  int party_id = 0;
  int outcome = 0;
  std::string freq_tag;

  friend bool operator==(const BulletinRecord&, const BulletinRecord&) = default;
};

/// Append-only public board of measurement announcements. Records are keyed
/// by (set_id, party_id): re-publishing an identical record is a no-op,
/// publishing a different record under an existing key is rejected. Parties
/// are honest-but-curious; the board never mutates or reorders past entries.
class Bulletin {
 public:
  Bulletin() = default;
  Bulletin(Bulletin&&) noexcept;
  Bulletin& operator=(Bulletin&&) noexcept;

  /// Builds a board from records whose keys the caller guarantees unique
  /// (e.g. produced by nested unique loops). Skips per-record conflict
  /// checks; uniqueness is still verified lazily if publish() is later used.
  static Bulletin from_records(std::vector<BulletinRecord>&& records);

  /// Checked append. Thread-safe; concurrent appends of disjoint keys are
  /// fine. Throws std::invalid_argument on a conflicting duplicate.
  void publish(const BulletinRecord& r);

  /// All records of one party, sorted by set_id.
  std::vector<BulletinRecord> fetch(int party_id) const;

  /// Every record, sorted by (set_id, party_id).
  std::vector<BulletinRecord> all_sorted() const;

  std::size_t size() const;
  bool empty() const { return size() == 0; }

 private:
  void ensure_index_locked();
  static std::uint64_t key_of(std::int64_t set_id, int party_id);

  mutable std::mutex mu_;
  std::vector<BulletinRecord> records_;
  std::unordered_map<std::uint64_t, std::uint32_t> index_;
  bool indexed_ = true;  // empty board is trivially indexed
};

/// Serializes sorted records as one JSON object per line:
///   {"set":0,"party":1,"outcome":-1,"freq":"w1"}
/// Output is byte-stable for a given board content.
void write_bulletin(std::ostream& out, const Bulletin& b);

/// Parses the line format back into a board, enforcing the same conflict
/// rules as publish(). Malformed lines raise std::runtime_error with the
/// offending line number.
Bulletin read_bulletin(std::istream& in);

void save_bulletin(const std::string& path, const Bulletin& b);
Bulletin load_bulletin(const std::string& path);

}  // namespace qcs
