// Copyright 2026 The beamdisc Authors
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

#ifndef BEAMDISC_RNG_H_
#define BEAMDISC_RNG_H_

#include <cstdint>
#include <limits>

namespace beamdisc {

// SplitMix64 generator. Satisfies UniformRandomBitGenerator so it can drive
// the <random> distributions.
//
// Substreams are keyed by (seed, a, b) through the SplitMix64 finalizer, so a
// (snapshot, ue) pair always sees the same draws no matter which worker thread
// processes it.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit constexpr Rng(std::uint64_t state) : state_(state) {}

  static constexpr Rng ForStream(std::uint64_t seed, std::uint64_t a,
                                 std::uint64_t b) {
    std::uint64_t s = Mix(seed ^ 0x6a09e667f3bcc909ULL);
    s = Mix(s ^ (a + 0x9e3779b97f4a7c15ULL));
    s = Mix(s ^ (b + 0xbb67ae8584caa73bULL));
    return Rng(s);
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  constexpr result_type operator()() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return Mix(state_);
  }

  // Uniform on [0, 1) with 53 bits of resolution.
  constexpr double Uniform() {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

 private:
  static constexpr std::uint64_t Mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace beamdisc

#endif  // BEAMDISC_RNG_H_
