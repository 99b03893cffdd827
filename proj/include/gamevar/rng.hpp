// Copyright 2026 The gamevar Authors.
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

#ifndef GAMEVAR_RNG_HPP_
#define GAMEVAR_RNG_HPP_

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>

namespace gamevar {

// Substream tags. Every stochastic step derives its generator from
// (master seed, tag, index) so results do not depend on execution order.
enum class Stream : std::uint64_t {
  kSimulation = 1,
  kImputation = 2,
  kBootstrap = 3,
  kProfile = 4,
  kGameShape = 5,
  kFuzz = 6,
};

inline std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t DeriveSeed(std::uint64_t master, Stream stream,
                                std::uint64_t index) {
  std::uint64_t h = SplitMix64(master);
  h = SplitMix64(h ^ static_cast<std::uint64_t>(stream));
  return SplitMix64(h ^ (index * 0xd6e8feb86659fd93ULL));
}

// mt19937_64 with distribution code written out, so draws are identical
// across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t NextU64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double Uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n); n > 0.
  std::uint64_t Below(std::uint64_t n) {
    // Lemire-style rejection keeps the result unbiased.
    const std::uint64_t limit = (~std::uint64_t{0}) - (~std::uint64_t{0}) % n;
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return x % n;
  }

  // Index drawn from a probability vector. Zero-probability entries are
  // never returned.
  std::size_t Categorical(std::span<const double> probs) {
    const double u = Uniform();
    double cumulative = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
      if (probs[i] <= 0.0) continue;
      last_positive = i;
      cumulative += probs[i];
      if (u < cumulative) return i;
    }
    return last_positive;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace gamevar

#endif  // GAMEVAR_RNG_HPP_
