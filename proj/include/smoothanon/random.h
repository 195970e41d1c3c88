// Copyright 2026 The smoothanon Authors
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

#ifndef SMOOTHANON_RANDOM_H_
#define SMOOTHANON_RANDOM_H_

#include <cstdint>
#include <initializer_list>
#include <random>

namespace smoothanon {

// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr uint64_t Mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Folds `values` into `seed` one word at a time:
//   h = Mix64(seed); for v in values: h = Mix64(h ^ Mix64(v))
// Every seeded stream in the library (per-cell SBM draws, per-row response
// streams, minhash functions, Meyerson runs, shard chunks) is keyed this way,
// so results never depend on iteration order or thread count.
constexpr uint64_t DeriveSeed(uint64_t seed,
                              std::initializer_list<uint64_t> values) {
  uint64_t h = Mix64(seed);
  for (uint64_t v : values) h = Mix64(h ^ Mix64(v));
  return h;
}

// Maps the top 53 bits of `bits` to a double in [0, 1).
constexpr double ToUnitInterval(uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Sequential generator for a keyed stream.
inline std::mt19937_64 MakeEngine(uint64_t seed,
                                  std::initializer_list<uint64_t> key) {
  return std::mt19937_64(DeriveSeed(seed, key));
}

}  // namespace smoothanon

#endif  // SMOOTHANON_RANDOM_H_
