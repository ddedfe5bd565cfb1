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

#ifndef WSUB_RANDOM_H_
#define WSUB_RANDOM_H_

#include <cstddef>
#include <cstdint>
#include <random>

namespace wsub {

// The generator used by every randomized routine in the library.
using Rng = std::mt19937_64;

// One step of the splitmix64 output function.
inline std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed for trial `t` of an experiment; depends only on (master, t).
inline std::uint64_t DeriveSeed(std::uint64_t master, std::uint64_t t) {
  return SplitMix64(SplitMix64(master) ^ SplitMix64(t + 0x632be59bd9b4e019ULL));
}

// Uniform double in [0, 1) from the top 53 bits of one draw.
inline double UniformUnit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// floor(u * size) for u uniform in [0, 1); size must be positive.
inline std::size_t UniformIndex(Rng& rng, std::size_t size) {
  auto i = static_cast<std::size_t>(UniformUnit(rng) * static_cast<double>(size));
  return i < size ? i : size - 1;
}

}  // namespace wsub

#endif  // WSUB_RANDOM_H_
