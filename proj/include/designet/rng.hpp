// Copyright 2026 The designet Authors
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

#ifndef DESIGNET_RNG_HPP
#define DESIGNET_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace designet {

/// One step of the splitmix64 sequence. Advances `state` and returns the
/// mixed output word.
inline uint64_t splitmix64(uint64_t &state) {
  uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Derives an independent 64-bit seed from (master, stream, index).
///
/// This is the seed-derivation hash used everywhere a master seed fans out
/// into per-stage or per-item streams (e.g. one stream per dataset class,
/// one index per image), so any single item is regenerable in isolation.
inline uint64_t derive_seed(uint64_t master, uint64_t stream, uint64_t index) {
  uint64_t s = master;
  splitmix64(s);
  s ^= 0x9E3779B97F4A7C15ull * (stream + 1);
  splitmix64(s);
  s ^= 0x9E3779B97F4A7C15ull * (index + 1);
  return splitmix64(s);
}

/// Deterministic random stream: mt19937_64 plus self-contained uniform /
/// normal transforms, so sequences do not depend on the standard library's
/// unspecified distribution algorithms.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1), 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Unbiased uniform integer in [0, bound) via rejection.
  uint64_t uniform_below(uint64_t bound) {
    const uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

  /// Standard normal via Box-Muller (pairs cached).
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    // u1 in (0,1] so the log is finite.
    double u1 = 1.0 - uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  /// Standard complex normal: E|z|^2 = 1.
  std::complex<double> complex_normal() {
    double re = normal();
    double im = normal();
    return {re * M_SQRT1_2, im * M_SQRT1_2};
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace designet

#endif  // DESIGNET_RNG_HPP
