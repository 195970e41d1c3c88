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

#ifndef SMOOTHANON_ANONYMIZER_H_
#define SMOOTHANON_ANONYMIZER_H_

#include <chrono>
#include <cstddef>
#include <span>
#include <string_view>

#include "absl/status/statusor.h"
#include "smoothanon/clustering.h"
#include "smoothanon/sparse_matrix.h"

namespace smoothanon {

enum class AnonymizationMode { kSmooth, kSuppress };

std::string_view ModeName(AnonymizationMode mode);

struct AnonymizationReport {
  SparseBinaryMatrix output;
  size_t k = 0;
  AnonymizationMode mode = AnonymizationMode::kSmooth;
  DiffStats stats;
  double jaccard = 0;
  double suppressed_frac = 0;
  double created_frac = 0;
  // The k-anonymity verifier (and, in smooth mode, the majority verifier)
  // passed on the output.
  bool verified = false;
  size_t cluster_count = 0;
  std::chrono::duration<double> wall_time{};
};

// Majority rounding: every member of a cluster receives feature f iff
// 2 * |{members holding f}| >= cluster size. `assignment` maps users to dense
// cluster ids. Work is proportional to the members' row lengths.
SparseBinaryMatrix SmoothRound(const SparseBinaryMatrix& m,
                               std::span<const uint32_t> assignment);
SparseBinaryMatrix SmoothRound(const SparseBinaryMatrix& m,
                               const Clustering& c);

// Every member of a cluster receives the intersection of the members' rows.
SparseBinaryMatrix SuppressRound(const SparseBinaryMatrix& m,
                                 std::span<const uint32_t> assignment);
SparseBinaryMatrix SuppressRound(const SparseBinaryMatrix& m,
                                 const Clustering& c);

// SmoothRound with an externally supplied partition (arbitrary block labels,
// one per user).
absl::StatusOr<SparseBinaryMatrix> SmoothRoundWithGivenClusters(
    const SparseBinaryMatrix& m, std::span<const uint32_t> blocks);

// Metrics and verification for a finished output.
absl::StatusOr<AnonymizationReport> MakeReport(
    const SparseBinaryMatrix& original, SparseBinaryMatrix output, size_t k,
    AnonymizationMode mode, size_t cluster_count,
    std::chrono::duration<double> wall_time);

// Full pipeline: facility location, size enforcement, rounding, metrics.
// For k == 1 the users are clustered by identical rows and the input is
// released unchanged.
absl::StatusOr<AnonymizationReport> Anonymize(const SparseBinaryMatrix& m,
                                              size_t k, AnonymizationMode mode,
                                              const FacilityConfig& cfg);

}  // namespace smoothanon

#endif  // SMOOTHANON_ANONYMIZER_H_
