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

#ifndef SMOOTHANON_ORACLE_H_
#define SMOOTHANON_ORACLE_H_

#include <cstddef>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "smoothanon/sparse_matrix.h"

namespace smoothanon {

// Exhaustive ground truth for tiny instances.

inline constexpr size_t kMaxOracleUsers = 10;
inline constexpr size_t kMaxOracleFacilities = 12;

struct OracleResult {
  double best_jaccard = 0;
  std::vector<std::vector<UserId>> best_partition;
  // Partitions with every part of size >= k that were scored.
  size_t enumerated = 0;
};

// Best Jaccard over all partitions into parts of size >= k, each rounded by
// majority. Exact ties (2 * holders == part size) are tried both ways.
absl::StatusOr<OracleResult> BruteForceSmoothOptimum(const SparseBinaryMatrix& m,
                                                     size_t k);

struct FacilityLocationOptimum {
  double objective = 0;
  std::vector<size_t> open;
};

// Minimum of sum(costs[open]) + sum_i min_{j in open} Hamming(i, j) over all
// non-empty facility subsets.
absl::StatusOr<FacilityLocationOptimum> BruteForceFacilityLocation(
    std::span<const Row> points, std::span<const double> costs);

}  // namespace smoothanon

#endif  // SMOOTHANON_ORACLE_H_
