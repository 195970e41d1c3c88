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

#ifndef SMOOTHANON_SHARD_H_
#define SMOOTHANON_SHARD_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "absl/status/statusor.h"
#include "smoothanon/anonymizer.h"
#include "smoothanon/clustering.h"
#include "smoothanon/sparse_matrix.h"

namespace smoothanon {

struct ShardConfig {
  size_t num_hashes = 8;
  size_t chunk_size = 1000;
  uint64_t seed = 0;
  // OpenMP threads for chunk-level parallelism; 0 uses the runtime default.
  // Never changes the output.
  int workers = 0;
};

using MinhashSignature = std::vector<uint64_t>;

// signature[j] = min over f in row of DeriveSeed(cfg.seed, {j, f}).
// Empty rows get the all-max signature and therefore sort last.
MinhashSignature ComputeMinhashSignature(RowView row, const ShardConfig& cfg);

// Users stably sorted by signature, lexicographically.
std::vector<UserId> ShardOrder(const SparseBinaryMatrix& m,
                               const ShardConfig& cfg);

// Consecutive runs of `order` of chunk_size users; a final run shorter than
// k is appended to the previous one.
std::vector<std::vector<UserId>> SplitIntoChunks(
    const std::vector<UserId>& order, size_t chunk_size, size_t k);

// Seed of the facility-location run for chunk `chunk`.
uint64_t ChunkSeed(uint64_t seed, size_t chunk);

// Anonymizes each chunk independently (chunks in parallel) and scatters the
// rows back to their original positions. Within a chunk users keep their
// original relative order.
absl::StatusOr<AnonymizationReport> ShardedAnonymize(
    const SparseBinaryMatrix& m, size_t k, AnonymizationMode mode,
    const FacilityConfig& fcfg, const ShardConfig& scfg);

}  // namespace smoothanon

#endif  // SMOOTHANON_SHARD_H_
