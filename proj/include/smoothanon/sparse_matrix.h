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

#ifndef SMOOTHANON_SPARSE_MATRIX_H_
#define SMOOTHANON_SPARSE_MATRIX_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"

namespace smoothanon {

using UserId = uint32_t;
using FeatureId = uint32_t;

// Sorted, duplicate-free feature indices of one user.
using Row = std::vector<FeatureId>;
using RowView = std::span<const FeatureId>;

// A users x features binary matrix stored as one sorted index list per user.
// The dense matrix is never materialized.
class SparseBinaryMatrix {
 public:
  SparseBinaryMatrix() = default;

  // Validates that every row is strictly increasing and within
  // [0, n_features).
  static absl::StatusOr<SparseBinaryMatrix> Create(size_t n_features,
                                                   std::vector<Row> rows);

  // For kernels that produce rows already satisfying the invariants. Checked
  // only in debug builds.
  static SparseBinaryMatrix FromValidRows(size_t n_features,
                                          std::vector<Row> rows);

  size_t n_users() const { return rows_.size(); }
  size_t n_features() const { return n_features_; }
  // |E|.
  size_t num_entries() const { return num_entries_; }
  // |E| / (n * m); 0 for an empty shape.
  double density() const;

  RowView row(UserId u) const { return rows_[u]; }
  const std::vector<Row>& rows() const { return rows_; }
  bool Contains(UserId u, FeatureId f) const;

  // Rows of `users`, in the given order.
  SparseBinaryMatrix SelectRows(std::span<const UserId> users) const;

  bool operator==(const SparseBinaryMatrix&) const = default;

 private:
  SparseBinaryMatrix(size_t n_features, std::vector<Row> rows);

  size_t n_features_ = 0;
  std::vector<Row> rows_;
  size_t num_entries_ = 0;
};

// |a xor b| for sorted rows.
size_t HammingDistance(RowView a, RowView b);
// |a and b| for sorted rows.
size_t IntersectionSize(RowView a, RowView b);
// Sorted intersection of two sorted rows.
Row IntersectRows(RowView a, RowView b);

// Set counts between an original edge set E and a released edge set E'.
struct DiffStats {
  size_t intersection = 0;  // |E ∩ E'|
  size_t union_ = 0;        // |E ∪ E'|
  size_t removed = 0;       // |E \ E'|
  size_t created = 0;       // |E' \ E|

  size_t symmetric_difference() const { return removed + created; }
};

absl::StatusOr<DiffStats> ComputeDiffStats(const SparseBinaryMatrix& original,
                                           const SparseBinaryMatrix& other);

// |E ∩ E'| / |E ∪ E'|, and 1 when both sets are empty.
double Jaccard(const DiffStats& stats);

struct EntryFractions {
  double suppressed = 0;
  double created = 0;
};

// (removed, created) normalized by the original entry count.
absl::StatusOr<EntryFractions> SuppressedCreatedFractions(
    const DiffStats& stats, size_t original_entries);

// Users grouped by identical rows. Class ids follow first appearance.
struct EquivalenceClasses {
  std::vector<uint32_t> class_of;
  std::vector<size_t> class_sizes;

  size_t num_classes() const { return class_sizes.size(); }
};

EquivalenceClasses ComputeEquivalenceClasses(const SparseBinaryMatrix& m);

// Every class of identical rows has at least k members.
bool VerifyKAnonymous(const SparseBinaryMatrix& m, size_t k);

// k-anonymity of `output`, plus the majority condition: every feature in a
// class's common row was held in `original` by at least half of the class
// (2 * holders >= class size).
absl::StatusOr<bool> VerifySmoothKAnonymous(const SparseBinaryMatrix& output,
                                            const SparseBinaryMatrix& original,
                                            size_t k);

}  // namespace smoothanon

#endif  // SMOOTHANON_SPARSE_MATRIX_H_
