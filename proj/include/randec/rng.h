// Copyright 2026 The randec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RANDEC_RNG_H
#define RANDEC_RNG_H

#include <cmath>
#include <cstdint>
#include <numbers>

namespace randec {

// Counter-based random streams built on the SplitMix64 finalizer
// (Steele, Lea & Flood '14 constants). Every draw is a pure function of
// (key, counter), so results never depend on call order, thread count, or
// how many values other streams consumed. Ensemble code derives one stream
// per realization from (master seed, realization index) and addresses draws
// inside a realization by interval index.

inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += kGoldenGamma;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Child stream key for (parent key, index). Used for the
// master seed -> realization and realization -> substream chains.
constexpr std::uint64_t derive_stream(std::uint64_t key, std::uint64_t index) {
  return splitmix64(key + (index + 1) * kGoldenGamma);
}

class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : key_(key) {}
  CounterRng(std::uint64_t parent, std::uint64_t index)
      : key_(derive_stream(parent, index)) {}

  std::uint64_t key() const { return key_; }

  std::uint64_t bits(std::uint64_t counter) const {
    return splitmix64(key_ + (counter + 1) * kGoldenGamma);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform01(std::uint64_t counter) const {
    return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
  }

  // Unbiased integer in [0, bound). Rejection sampling on the top partial
  // block; rejected attempts rehash (counter, attempt) so the stream stays
  // counter addressable.
  std::uint32_t uniform_index(std::uint64_t counter, std::uint32_t bound) const {
    const std::uint64_t accept = UINT64_MAX / bound * bound;
    std::uint64_t x = bits(counter);
    for (std::uint64_t attempt = 1; x >= accept; ++attempt) {
      x = splitmix64(bits(counter) + attempt * kGoldenGamma);
    }
    return static_cast<std::uint32_t>(x % bound);
  }

  // Standard normal via Box-Muller; consumes counters 2c and 2c+1.
  double gaussian(std::uint64_t counter) const {
    const double u1 = uniform01(2 * counter);
    const double u2 = uniform01(2 * counter + 1);
    const double r = std::sqrt(-2.0 * std::log1p(-u1));
    return r * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::uint64_t key_;
};

}  // namespace randec

#endif  // RANDEC_RNG_H
