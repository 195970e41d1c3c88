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

#include "smoothanon/sparse_matrix.h"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"

namespace smoothanon {

SparseBinaryMatrix::SparseBinaryMatrix(size_t n_features, std::vector<Row> rows)
    : n_features_(n_features), rows_(std::move(rows)) {
  for (const Row& r : rows_) num_entries_ += r.size();
}

absl::StatusOr<SparseBinaryMatrix> SparseBinaryMatrix::Create(
    size_t n_features, std::vector<Row> rows) {
  for (size_t u = 0; u < rows.size(); ++u) {
    const Row& r = rows[u];
    for (size_t i = 0; i < r.size(); ++i) {
      if (r[i] >= n_features) {
        return absl::InvalidArgumentError(absl::StrFormat(
            "row %d: feature %d out of range [0, %d)", u, r[i], n_features));
      }
      if (i > 0 && r[i - 1] >= r[i]) {
        return absl::InvalidArgumentError(absl::StrFormat(
            "row %d: indices not strictly increasing at position %d", u, i));
      }
    }
  }
  return SparseBinaryMatrix(n_features, std::move(rows));
}

SparseBinaryMatrix SparseBinaryMatrix::FromValidRows(size_t n_features,
                                                     std::vector<Row> rows) {
#ifndef NDEBUG
  for (const Row& r : rows) {
    assert(std::is_sorted(r.begin(), r.end()));
    assert(std::adjacent_find(r.begin(), r.end()) == r.end());
    assert(r.empty() || r.back() < n_features);
  }
#endif
  return SparseBinaryMatrix(n_features, std::move(rows));
}

double SparseBinaryMatrix::density() const {
  const double cells =
      static_cast<double>(n_users()) * static_cast<double>(n_features_);
  return cells == 0 ? 0.0 : static_cast<double>(num_entries_) / cells;
}

bool SparseBinaryMatrix::Contains(UserId u, FeatureId f) const {
  const Row& r = rows_[u];
  return std::binary_search(r.begin(), r.end(), f);
}

SparseBinaryMatrix SparseBinaryMatrix::SelectRows(
    std::span<const UserId> users) const {
  std::vector<Row> rows;
  rows.reserve(users.size());
  for (UserId u : users) rows.push_back(rows_[u]);
  return SparseBinaryMatrix(n_features_, std::move(rows));
}

size_t IntersectionSize(RowView a, RowView b) {
  size_t i = 0, j = 0, common = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      ++common;
      ++i;
      ++j;
    }
  }
  return common;
}

size_t HammingDistance(RowView a, RowView b) {
  return a.size() + b.size() - 2 * IntersectionSize(a, b);
}

Row IntersectRows(RowView a, RowView b) {
  Row out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

absl::StatusOr<DiffStats> ComputeDiffStats(const SparseBinaryMatrix& original,
                                           const SparseBinaryMatrix& other) {
  if (original.n_users() != other.n_users() ||
      original.n_features() != other.n_features()) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "dimension mismatch: %dx%d vs %dx%d", original.n_users(),
        original.n_features(), other.n_users(), other.n_features()));
  }
  DiffStats stats;
  for (UserId u = 0; u < original.n_users(); ++u) {
    const size_t common = IntersectionSize(original.row(u), other.row(u));
    stats.intersection += common;
    stats.removed += original.row(u).size() - common;
    stats.created += other.row(u).size() - common;
  }
  stats.union_ = stats.intersection + stats.removed + stats.created;
  return stats;
}

double Jaccard(const DiffStats& stats) {
  if (stats.union_ == 0) return 1.0;
  return static_cast<double>(stats.intersection) /
         static_cast<double>(stats.union_);
}

absl::StatusOr<EntryFractions> SuppressedCreatedFractions(
    const DiffStats& stats, size_t original_entries) {
  if (original_entries == 0) {
    return absl::InvalidArgumentError("original matrix has no entries");
  }
  const double total = static_cast<double>(original_entries);
  return EntryFractions{.suppressed = static_cast<double>(stats.removed) / total,
                        .created = static_cast<double>(stats.created) / total};
}

EquivalenceClasses ComputeEquivalenceClasses(const SparseBinaryMatrix& m) {
  const size_t n = m.n_users();
  std::vector<UserId> order(n);
  std::iota(order.begin(), order.end(), 0);
  // Stable sort keeps the lowest user id first within each group, which is
  // what first-appearance numbering needs.
  std::stable_sort(order.begin(), order.end(), [&](UserId a, UserId b) {
    return std::lexicographical_compare(m.row(a).begin(), m.row(a).end(),
                                        m.row(b).begin(), m.row(b).end());
  });

  std::vector<UserId> group_leader(n);
  for (size_t i = 0; i < n; ++i) {
    const bool same = i > 0 && std::ranges::equal(m.row(order[i - 1]),
                                                  m.row(order[i]));
    group_leader[order[i]] = same ? group_leader[order[i - 1]] : order[i];
  }

  EquivalenceClasses classes;
  classes.class_of.assign(n, 0);
  std::vector<int64_t> id_of_leader(n, -1);
  for (UserId u = 0; u < n; ++u) {
    int64_t& id = id_of_leader[group_leader[u]];
    if (id < 0) {
      id = static_cast<int64_t>(classes.class_sizes.size());
      classes.class_sizes.push_back(0);
    }
    classes.class_of[u] = static_cast<uint32_t>(id);
    ++classes.class_sizes[id];
  }
  return classes;
}

bool VerifyKAnonymous(const SparseBinaryMatrix& m, size_t k) {
  const EquivalenceClasses classes = ComputeEquivalenceClasses(m);
  return std::ranges::all_of(classes.class_sizes,
                             [k](size_t s) { return s >= k; });
}

absl::StatusOr<bool> VerifySmoothKAnonymous(const SparseBinaryMatrix& output,
                                            const SparseBinaryMatrix& original,
                                            size_t k) {
  if (output.n_users() != original.n_users() ||
      output.n_features() != original.n_features()) {
    return absl::InvalidArgumentError("dimension mismatch");
  }
  const EquivalenceClasses classes = ComputeEquivalenceClasses(output);
  if (!std::ranges::all_of(classes.class_sizes,
                           [k](size_t s) { return s >= k; })) {
    return false;
  }

  std::vector<std::vector<UserId>> members(classes.num_classes());
  for (UserId u = 0; u < output.n_users(); ++u) {
    members[classes.class_of[u]].push_back(u);
  }
  for (const std::vector<UserId>& cls : members) {
    const RowView common = output.row(cls.front());
    for (FeatureId f : common) {
      size_t holders = 0;
      for (UserId u : cls) holders += original.Contains(u, f) ? 1 : 0;
      if (2 * holders < cls.size()) return false;
    }
  }
  return true;
}

}  // namespace smoothanon
