// Copyright 2026 The Coarse SBM Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef COARSE_SBM_RNG_H_
#define COARSE_SBM_RNG_H_

#include <cstdint>
#include <limits>

namespace coarse_sbm {

// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr uint64_t Mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Counter-based derivation: the value for (seed, counter) never depends on
// how many other values were drawn before it.
constexpr uint64_t CounterHash(uint64_t seed, uint64_t counter) {
  return Mix64(Mix64(seed) ^ Mix64(counter + 0x632be59bd9b4e019ULL));
}

constexpr uint64_t DeriveSeed(uint64_t seed, uint64_t stream) {
  return CounterHash(seed ^ 0xd1b54a32d192ed03ULL, stream);
}

constexpr uint64_t DeriveSeed(uint64_t seed, uint64_t stream, uint64_t index) {
  return DeriveSeed(DeriveSeed(seed, stream), index);
}

// Uniform double in [0, 1) with 53 random bits.
constexpr double ToUnit(uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n) by multiply-shift.
inline uint64_t ToIndex(uint64_t bits, uint64_t n) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(bits) * n) >> 64);
}

// Stream RNG over CounterHash; satisfies UniformRandomBitGenerator so it can
// drive <random> distributions.
class CounterRng {
 public:
  using result_type = uint64_t;

  explicit CounterRng(uint64_t seed) : seed_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() { return CounterHash(seed_, counter_++); }

  double Uniform() { return ToUnit((*this)()); }
  uint64_t Index(uint64_t n) { return ToIndex((*this)(), n); }

 private:
  uint64_t seed_;
  uint64_t counter_ = 0;
};

// Named sub-streams so independent consumers of one master seed never share
// draws.
namespace streams {
inline constexpr uint64_t kAssignment = 1;
inline constexpr uint64_t kFineEdges = 2;
inline constexpr uint64_t kPlan = 3;
inline constexpr uint64_t kProfiles = 4;
inline constexpr uint64_t kCoarse = 5;
inline constexpr uint64_t kSpectral = 6;
inline constexpr uint64_t kTrial = 7;
}  // namespace streams

}  // namespace coarse_sbm

#endif  // COARSE_SBM_RNG_H_
