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

#ifndef SMOOTHANON_REFERENCE_H_
#define SMOOTHANON_REFERENCE_H_

#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "smoothanon/clustering.h"
#include "smoothanon/sbm.h"
#include "smoothanon/sparse_matrix.h"

// Straightforward single-threaded versions of the parallel kernels. They share
// no code with the optimized paths beyond HammingDistance and the keyed
// random draws, and exist so tests and benchmarks can compare against them.
namespace smoothanon::reference {

// Pairwise merge distances and a full sort per user.
std::vector<double> OpeningCosts(const SparseBinaryMatrix& m,
                                 const FacilityConfig& cfg);

// Per cluster, tests every feature 0..m-1 against every member.
SparseBinaryMatrix SmoothRound(const SparseBinaryMatrix& m,
                               std::span<const uint32_t> assignment);
SparseBinaryMatrix SuppressRound(const SparseBinaryMatrix& m,
                                 std::span<const uint32_t> assignment);

// Row-major double loop over all n^2 cells.
absl::StatusOr<SparseBinaryMatrix> GenerateSbm(const SbmParams& params);

// Nearest center per user by linear scan.
std::vector<uint32_t> NearestCenters(const SparseBinaryMatrix& m,
                                     const std::vector<Row>& centers);

}  // namespace smoothanon::reference

#endif  // SMOOTHANON_REFERENCE_H_
