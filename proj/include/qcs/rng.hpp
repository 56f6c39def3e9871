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

#include <cmath>
#include <cstdint>

namespace qcs {

// All randomness in the library flows through Rng: a splitmix64 state walk.
// The generator is defined entirely by 64-bit integer arithmetic, so a
// (seed, stream) pair reproduces the same draws on any platform, and seeding
// a fresh substream costs three mixes. The protocol opens one substream per
// qubit set, which a heavy-state engine would make the dominant cost.

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Derives an independent stream seed from a base seed and up to two stream
/// ids. Used to give every (qubit set, purpose) pair its own generator so the
/// draw sequence is independent of processing order.
inline std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t id0,
                                        std::uint64_t id1 = 0) {
  std::uint64_t s = seed;
  (void)splitmix64_next(s);
  s ^= id0 * 0xD1B54A32D192ED03ULL;
  (void)splitmix64_next(s);
  s ^= id1 * 0x8CB92BA72F3D8DD7ULL;
  std::uint64_t out = splitmix64_next(s);
  // Avoid the all-zero engine seed edge case.
  return out ? out : 0x4D595DF4D0F33173ULL;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  static Rng substream(std::uint64_t seed, std::uint64_t id0, std::uint64_t id1 = 0) {
    return Rng(derive_stream_seed(seed, id0, id1));
  }

  std::uint64_t raw() { return splitmix64_next(state_); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(raw() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller. One value per call; deterministic and
  /// platform-independent, unlike std::normal_distribution.
  double normal() {
    double u1 = 1.0 - uniform();  // (0, 1], keeps log finite
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
  }

  /// Uniform integer in [0, bound) by rejection; bound must be > 0.
  std::uint64_t below(std::uint64_t bound) {
    std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      std::uint64_t r = raw();
      if (r >= threshold) return r % bound;
    }
  }

 private:
  std::uint64_t state_;
};

}  // namespace qcs
