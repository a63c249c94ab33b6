// Copyright 2026 The Authors.
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

// Seed derivation for independent random streams.
//
// Every consumer of randomness (per-node gradient noise, per-node Z samples,
// per-node block permutations, topology sampling) draws from its own
// std::mt19937_64 whose seed is derived from the master seed, a purpose tag
// and an index. Streams therefore never interleave and results do not depend
// on the order in which nodes are processed.

#pragma once

#include <cstdint>
#include <random>

namespace dsm {

using Rng = std::mt19937_64;

enum class StreamPurpose : std::uint64_t {
  kTopology = 1,
  kGradientNoise = 2,
  kZSampler = 3,
  kPermutation = 4,
  kSyntheticData = 5,
  kQuadraticData = 6,
};

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t master, StreamPurpose purpose,
                                    std::uint64_t index) {
  std::uint64_t s = splitmix64(master);
  s = splitmix64(s ^ static_cast<std::uint64_t>(purpose));
  return splitmix64(s ^ (index * 0xd1b54a32d192ed03ULL));
}

inline Rng make_stream(std::uint64_t master, StreamPurpose purpose,
                       std::uint64_t index) {
  return Rng(derive_seed(master, purpose, index));
}

// Uniform double in [0, 1) built from the top 53 bits; unlike
// std::uniform_real_distribution its output is identical across standard
// library implementations.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace dsm
