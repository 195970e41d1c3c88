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

#include "smoothanon/oracle.h"

#include <algorithm>
#include <limits>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"

namespace smoothanon {
namespace {

// Above this many exact ties in one partition, every tie is included instead
// of enumerated. Including a tied feature adds the same amount c to both
// intersection and union, which never lowers a ratio <= 1, so the shortcut
// loses nothing.
constexpr size_t kMaxEnumeratedTies = 16;

struct TieItem {
  size_t holders;
};

class PartitionSearch {
 public:
  PartitionSearch(const SparseBinaryMatrix& m, size_t k) : m_(m), k_(k) {
    label_.assign(m.n_users(), 0);
  }

  OracleResult Run() {
    Recurse(0, 0);
    return std::move(result_);
  }

 private:
  void Recurse(size_t user, size_t parts) {
    const size_t n = m_.n_users();
    // Prune: parts below k need at least this many of the remaining users.
    size_t deficit = 0;
    for (size_t p = 0; p < parts; ++p) {
      if (sizes_[p] < k_) deficit += k_ - sizes_[p];
    }
    if (deficit > n - user) return;
    if (user == n) {
      Score(parts);
      return;
    }
    for (size_t p = 0; p <= parts; ++p) {
      if (p == sizes_.size()) sizes_.push_back(0);
      label_[user] = static_cast<uint32_t>(p);
      ++sizes_[p];
      Recurse(user + 1, p == parts ? parts + 1 : parts);
      --sizes_[p];
    }
  }

  void Score(size_t parts) {
    ++result_.enumerated;
    size_t intersection = 0, union_size = 0;
    std::vector<TieItem> ties;
    std::vector<size_t> holders(m_.n_features());
    for (size_t p = 0; p < parts; ++p) {
      std::fill(holders.begin(), holders.end(), 0);
      for (UserId u = 0; u < m_.n_users(); ++u) {
        if (label_[u] != p) continue;
        for (FeatureId f : m_.row(u)) ++holders[f];
      }
      const size_t size = sizes_[p];
      for (size_t c : holders) {
        if (c == 0) continue;
        if (2 * c > size) {
          intersection += c;
          union_size += size;
        } else if (2 * c < size) {
          union_size += c;
        } else {
          ties.push_back({c});
        }
      }
    }

    double best = -1;
    if (ties.size() > kMaxEnumeratedTies) {
      size_t i = intersection, un = union_size;
      for (const TieItem& t : ties) {
        i += t.holders;
        un += 2 * t.holders;
      }
      best = un == 0 ? 1.0 : static_cast<double>(i) / static_cast<double>(un);
    } else {
      for (size_t mask = 0; mask < (size_t{1} << ties.size()); ++mask) {
        size_t i = intersection, un = union_size;
        for (size_t t = 0; t < ties.size(); ++t) {
          if (mask >> t & 1) {
            i += ties[t].holders;
            un += 2 * ties[t].holders;
          } else {
            un += ties[t].holders;
          }
        }
        const double j =
            un == 0 ? 1.0 : static_cast<double>(i) / static_cast<double>(un);
        if (j > best) best = j;
      }
    }

    if (best > result_.best_jaccard || result_.best_partition.empty()) {
      result_.best_jaccard = best;
      result_.best_partition.assign(parts, {});
      for (UserId u = 0; u < m_.n_users(); ++u) {
        result_.best_partition[label_[u]].push_back(u);
      }
    }
  }

  const SparseBinaryMatrix& m_;
  const size_t k_;
  std::vector<uint32_t> label_;
  std::vector<size_t> sizes_;
  OracleResult result_;
};

}  // namespace

absl::StatusOr<OracleResult> BruteForceSmoothOptimum(const SparseBinaryMatrix& m,
                                                     size_t k) {
  if (m.n_users() > kMaxOracleUsers) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "instance too large: %d users (max %d)", m.n_users(), kMaxOracleUsers));
  }
  if (k < 1 || m.n_users() < k) {
    return absl::FailedPreconditionError(
        absl::StrFormat("need 1 <= k <= n, got k=%d n=%d", k, m.n_users()));
  }
  return PartitionSearch(m, k).Run();
}

absl::StatusOr<FacilityLocationOptimum> BruteForceFacilityLocation(
    std::span<const Row> points, std::span<const double> costs) {
  const size_t n = points.size();
  if (n == 0) return absl::InvalidArgumentError("no points");
  if (n > kMaxOracleFacilities) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "too many points: %d (max %d)", n, kMaxOracleFacilities));
  }
  if (costs.size() != n) {
    return absl::InvalidArgumentError("costs and points differ in size");
  }

  std::vector<std::vector<size_t>> dist(n, std::vector<size_t>(n));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) dist[i][j] = HammingDistance(points[i], points[j]);
  }

  FacilityLocationOptimum best;
  best.objective = std::numeric_limits<double>::infinity();
  size_t best_mask = 0;
  for (size_t mask = 1; mask < (size_t{1} << n); ++mask) {
    double total = 0;
    for (size_t j = 0; j < n; ++j) {
      if (mask >> j & 1) total += costs[j];
    }
    for (size_t i = 0; i < n; ++i) {
      size_t nearest = std::numeric_limits<size_t>::max();
      for (size_t j = 0; j < n; ++j) {
        if (mask >> j & 1) nearest = std::min(nearest, dist[i][j]);
      }
      total += static_cast<double>(nearest);
    }
    if (total < best.objective) {
      best.objective = total;
      best_mask = mask;
    }
  }
  for (size_t j = 0; j < n; ++j) {
    if (best_mask >> j & 1) best.open.push_back(j);
  }
  return best;
}

}  // namespace smoothanon
