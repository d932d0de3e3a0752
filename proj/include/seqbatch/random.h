/* Copyright 2026 The seqbatch Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
// Platform-stable randomness.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard. The standard distributions and std::shuffle are not, so bounded
// draws and permutations are defined here:
//
//   DeriveSeed(seed, stream)  SplitMix64 finalizer applied to
//                             seed + (stream + 1) * 0x9E3779B97F4A7C15.
//   UniformBelow(n)           rejection sampling: draw x until
//                             x >= (2^64 - n) mod n, return x mod n.
//   UniformUnit()             (x >> 11) * 2^-53.
//   Shuffle(v)                Fisher-Yates from the back:
//                             for i = n-1..1, swap(v[i], v[UniformBelow(i+1)]).
//
// Stream ids used by the samplers are listed in sampler.h.

#ifndef SEQBATCH_RANDOM_H_
#define SEQBATCH_RANDOM_H_

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace seqbatch {

constexpr std::uint64_t SplitMix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t stream) {
  return SplitMix64(seed + (stream + 1) * 0x9E3779B97F4A7C15ULL);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t Next() { return engine_(); }

  // Uniform in [0, n). n must be >= 1.
  std::uint64_t UniformBelow(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      std::uint64_t x = engine_();
      if (x >= threshold) return x % n;
    }
  }

  // Uniform in [0, 1).
  double UniformUnit() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  template <typename T>
  void Shuffle(std::span<T> values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(UniformBelow(i));
      using std::swap;
      swap(values[i - 1], values[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace seqbatch

#endif  // SEQBATCH_RANDOM_H_
