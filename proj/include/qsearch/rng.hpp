// Copyright 2026 The qsearch Authors
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

// Random streams used for sampling.
//
// A run draws from std::mt19937_64 seeded with the run seed; per-shot
// trajectory streams are SplitMix64 generators whose state is derived from
// (seed, shot index). Both engines are fully specified by the standard /
// their reference definition, and uniforms are built from the top 53 bits
// directly (std::uniform_real_distribution is implementation-defined), so
// goldens are stable across platforms.
#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace qsearch {

using RunEngine = std::mt19937_64;

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit constexpr SplitMix64(std::uint64_t state) noexcept : state_(state) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  constexpr result_type operator()() noexcept {
    const std::uint64_t out = mix64(state_);
    state_ += 0x9e3779b97f4a7c15ULL;
    return out;
  }

 private:
  std::uint64_t state_;
};

/// Independent stream for one shot of a trajectory run.
constexpr SplitMix64 shot_stream(std::uint64_t seed, std::uint64_t shot) noexcept {
  return SplitMix64(mix64(seed ^ mix64(shot ^ 0x5851f42d4c957f2dULL)));
}

/// Uniform double in [0, 1) from the top 53 bits of one draw.
template <class Engine>
double uniform01(Engine& engine) {
  static_assert(Engine::max() == std::numeric_limits<std::uint64_t>::max());
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

}  // namespace qsearch
