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

#include "smoothanon/anonymizer.h"

#include <algorithm>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"

namespace smoothanon {
namespace {

std::vector<std::vector<UserId>> GroupMembers(
    std::span<const uint32_t> assignment) {
  uint32_t clusters = 0;
  for (uint32_t a : assignment) clusters = std::max(clusters, a + 1);
  std::vector<std::vector<UserId>> members(clusters);
  for (UserId u = 0; u < assignment.size(); ++u) {
    members[assignment[u]].push_back(u);
  }
  return members;
}

template <typename RoundCluster>
SparseBinaryMatrix RoundByCluster(const SparseBinaryMatrix& m,
                                  std::span<const uint32_t> assignment,
                                  RoundCluster round_cluster) {
  const std::vector<std::vector<UserId>> members = GroupMembers(assignment);
  std::vector<Row> rows(m.n_users());
  const int64_t clusters = static_cast<int64_t>(members.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (int64_t c = 0; c < clusters; ++c) {
    const std::vector<UserId>& cluster = members[c];
    if (cluster.empty()) continue;
    if (cluster.size() == 1) {
      const RowView r = m.row(cluster.front());
      rows[cluster.front()].assign(r.begin(), r.end());
      continue;
    }
    const Row common = round_cluster(cluster);
    for (UserId u : cluster) rows[u] = common;
  }
  return SparseBinaryMatrix::FromValidRows(m.n_features(), std::move(rows));
}

}  // namespace

std::string_view ModeName(AnonymizationMode mode) {
  return mode == AnonymizationMode::kSmooth ? "smooth" : "non-smooth";
}

SparseBinaryMatrix SmoothRound(const SparseBinaryMatrix& m,
                               std::span<const uint32_t> assignment) {
  return RoundByCluster(m, assignment, [&](const std::vector<UserId>& cluster) {
    std::vector<FeatureId> all;
    for (UserId u : cluster) {
      all.insert(all.end(), m.row(u).begin(), m.row(u).end());
    }
    std::sort(all.begin(), all.end());
    Row out;
    for (size_t i = 0; i < all.size();) {
      size_t j = i;
      while (j < all.size() && all[j] == all[i]) ++j;
      if (2 * (j - i) >= cluster.size()) out.push_back(all[i]);
      i = j;
    }
    return out;
  });
}

SparseBinaryMatrix SmoothRound(const SparseBinaryMatrix& m,
                               const Clustering& c) {
  return SmoothRound(m, c.assignment);
}

SparseBinaryMatrix SuppressRound(const SparseBinaryMatrix& m,
                                 std::span<const uint32_t> assignment) {
  return RoundByCluster(m, assignment, [&](const std::vector<UserId>& cluster) {
    Row common(m.row(cluster.front()).begin(), m.row(cluster.front()).end());
    for (size_t i = 1; i < cluster.size() && !common.empty(); ++i) {
      common = IntersectRows(common, m.row(cluster[i]));
    }
    return common;
  });
}

SparseBinaryMatrix SuppressRound(const SparseBinaryMatrix& m,
                                 const Clustering& c) {
  return SuppressRound(m, c.assignment);
}

absl::StatusOr<SparseBinaryMatrix> SmoothRoundWithGivenClusters(
    const SparseBinaryMatrix& m, std::span<const uint32_t> blocks) {
  if (blocks.size() != m.n_users()) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "partition covers %d users, matrix has %d", blocks.size(),
        m.n_users()));
  }
  // Relabel densely so sparse labels don't allocate empty clusters.
  std::vector<uint32_t> labels(blocks.begin(), blocks.end());
  std::vector<uint32_t> sorted = labels;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (uint32_t& l : labels) {
    l = static_cast<uint32_t>(
        std::lower_bound(sorted.begin(), sorted.end(), l) - sorted.begin());
  }
  return SmoothRound(m, labels);
}

absl::StatusOr<AnonymizationReport> MakeReport(
    const SparseBinaryMatrix& original, SparseBinaryMatrix output, size_t k,
    AnonymizationMode mode, size_t cluster_count,
    std::chrono::duration<double> wall_time) {
  absl::StatusOr<DiffStats> stats = ComputeDiffStats(original, output);
  if (!stats.ok()) return stats.status();

  AnonymizationReport report;
  report.k = k;
  report.mode = mode;
  report.stats = *stats;
  report.jaccard = Jaccard(*stats);
  if (original.num_entries() > 0) {
    const EntryFractions fr =
        *SuppressedCreatedFractions(*stats, original.num_entries());
    report.suppressed_frac = fr.suppressed;
    report.created_frac = fr.created;
  }
  bool verified = VerifyKAnonymous(output, k);
  if (verified && mode == AnonymizationMode::kSmooth) {
    absl::StatusOr<bool> smooth = VerifySmoothKAnonymous(output, original, k);
    verified = smooth.ok() && *smooth;
  }
  if (verified && mode == AnonymizationMode::kSuppress) {
    verified = stats->created == 0;
  }
  report.verified = verified;
  report.cluster_count = cluster_count;
  report.wall_time = wall_time;
  report.output = std::move(output);
  return report;
}

absl::StatusOr<AnonymizationReport> Anonymize(const SparseBinaryMatrix& m,
                                              size_t k, AnonymizationMode mode,
                                              const FacilityConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  if (k < 1) return absl::InvalidArgumentError("k must be at least 1");
  if (m.n_users() < k) {
    return absl::FailedPreconditionError(absl::StrFormat(
        "cannot anonymize: %d users is fewer than k=%d", m.n_users(), k));
  }

  std::vector<uint32_t> assignment;
  size_t clusters = 0;
  if (k == 1) {
    EquivalenceClasses classes = ComputeEquivalenceClasses(m);
    assignment = std::move(classes.class_of);
    clusters = classes.num_classes();
  } else {
    FacilityConfig run_cfg = cfg;
    run_cfg.k = k;
    absl::StatusOr<Clustering> c = ClusterForAnonymity(m, run_cfg);
    if (!c.ok()) return c.status();
    assignment = std::move(c->assignment);
    clusters = c->num_clusters();
  }

  SparseBinaryMatrix output = mode == AnonymizationMode::kSmooth
                                  ? SmoothRound(m, assignment)
                                  : SuppressRound(m, assignment);
  return MakeReport(m, std::move(output), k, mode, clusters,
                    std::chrono::steady_clock::now() - start);
}

}  // namespace smoothanon
