// Copyright 2026 The dplp Authors
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

#ifndef DPLP_RNG_HPP_
#define DPLP_RNG_HPP_

#include <cstdint>

namespace dplp {

// Deterministic random stream based on the splitmix64 generator.  Every
// randomized routine takes an Rng by reference; there is no hidden global
// state.  Independent substreams are derived from (seed, label) pairs so a
// single master seed reproduces an entire experiment regardless of how many
// trials or mechanisms consume randomness.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(mix(seed ^ kStreamSalt)) {}

  // Derives an independent substream without consuming from this stream.
  Rng stream(uint64_t label) const {
    return Rng(mix(base_ ^ mix(label + kLabelSalt)), Raw{});
  }

  uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix_output(state_);
  }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1); never returns an endpoint.
  double uniform_open() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Uniform integer in [0, n).
  uint64_t uniform_int(uint64_t n) {
    const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t v = next_u64();
    while (v >= limit) v = next_u64();
    return v % n;
  }

 private:
  struct Raw {};
  Rng(uint64_t base, Raw) : state_(base) {}

  static constexpr uint64_t kStreamSalt = 0x8f1bbcdcbfa53e0aULL;
  static constexpr uint64_t kLabelSalt = 0xd6e8feb86659fd93ULL;

  static uint64_t mix(uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    return mix_output(z);
  }

  static uint64_t mix_output(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  uint64_t state_;
  uint64_t base_ = state_;
};

}  // namespace dplp

#endif  // DPLP_RNG_HPP_
