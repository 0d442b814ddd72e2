// Copyright 2026 The abqc Authors
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

#ifndef ABQC_RNG_HPP
#define ABQC_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace abqc {

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Derives a child seed from a parent seed and a tag. Used for the
/// per-trial and per-party stream split: trial seed = derive(master, trial),
/// party stream = derive(trial seed, party tag).
inline uint64_t derive_seed(uint64_t parent, uint64_t tag) {
  return splitmix64(parent ^ splitmix64(tag + 0x1357ace09bdf2468ULL));
}

/// Seeded random stream. The bounded-integer and unit-interval draws are
/// implemented here rather than with std distributions so that identical
/// seeds give identical sequences on every standard library.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t u64() {
    ++draws_;
    return engine_();
  }

  /// Uniform integer in [0, bound). Rejection sampling, so exactly uniform.
  uint64_t below(uint64_t bound) {
    if (bound == 0) {
      return 0;
    }
    uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    uint64_t x;
    do {
      x = u64();
    } while (x >= limit);
    return x % bound;
  }

  /// Uniform double in [0, 1) with 53-bit resolution.
  double real01() { return static_cast<double>(u64() >> 11) * 0x1.0p-53; }

  bool coin() { return (u64() & 1) != 0; }

  /// Standard normal via Box-Muller (one spare value cached).
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * real01() - 1.0;
      v = 2.0 * real01() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    double scale = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * scale;
    has_spare_ = true;
    return u * scale;
  }

  /// In-place Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (size_t i = items.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

  /// Number of raw engine draws so far. Lets tests assert that deterministic
  /// measurement branches consume no randomness.
  uint64_t draw_count() const { return draws_; }

 private:
  std::mt19937_64 engine_;
  uint64_t draws_ = 0;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace abqc

#endif  // ABQC_RNG_HPP
