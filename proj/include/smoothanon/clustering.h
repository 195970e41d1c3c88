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

#ifndef SMOOTHANON_CLUSTERING_H_
#define SMOOTHANON_CLUSTERING_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "smoothanon/sparse_matrix.h"

namespace smoothanon {

// How undersized clusters are removed after facility location.
enum class SizeStrategy {
  // Close the smallest cluster below k and reassign its members to their
  // nearest open facility, until every cluster has at least k members.
  kCloseAndReassign,
  // Close clusters below alpha * k, then merge clusters below k pairwise
  // without exceeding 2k, splitting a large neighbor when needed.
  kBoundedMerge,
};

struct FacilityConfig {
  // Minimum cluster size.
  size_t k = 2;
  // Neighborhood multiplier; opening costs sum distances to the
  // floor(beta_mult * k) nearest users. Must exceed 1.
  double beta_mult = 2.0;
  size_t n_runs = 10;
  uint64_t seed = 0;
  SizeStrategy strategy = SizeStrategy::kCloseAndReassign;

  double alpha() const { return 1.0 / beta_mult; }
  // 2 alpha / (1 - alpha).
  double cost_multiplier() const { return 2.0 * alpha() / (1.0 - alpha()); }

  absl::Status Validate() const;
};

// Users assigned to clusters. Each cluster remembers the user at which its
// facility was opened and a representative row.
struct Clustering {
  std::vector<uint32_t> assignment;
  std::vector<Row> centers;
  std::vector<UserId> facilities;
  // Sum of Hamming distances from users to their cluster's center.
  double total_cost = 0;
  // Facility-location objective: opening costs plus connection distances.
  double objective = 0;

  size_t num_clusters() const { return centers.size(); }
  std::vector<size_t> Sizes() const;
  std::vector<std::vector<UserId>> Members() const;
};

// min(n, max(1, floor(beta_mult * k))).
size_t NeighborhoodSize(const FacilityConfig& cfg, size_t n_users);

// Opening cost of a facility at user i: cost_multiplier times the summed
// Hamming distance from i to its NeighborhoodSize() nearest users (i itself
// included).
double OpeningCost(UserId i, const SparseBinaryMatrix& m,
                   const FacilityConfig& cfg);

// OpeningCost for every user. OpenMP over users; distances come from an
// inverted feature index instead of pairwise merges.
std::vector<double> OpeningCosts(const SparseBinaryMatrix& m,
                                 const FacilityConfig& cfg);

// One online pass of Meyerson's facility location algorithm over `order`.
// The first point opens a facility. Each later point at distance d > 0 from
// its nearest facility opens one with probability min(1, d / cost) (always
// when cost is 0); at d == 0 it never opens.
absl::StatusOr<Clustering> MeyersonRun(const SparseBinaryMatrix& m,
                                       std::span<const double> costs,
                                       std::span<const UserId> order,
                                       uint64_t seed);

// Visit order and coin seed of run `run` inside SolveFacilityLocation.
std::vector<UserId> MeyersonOrder(size_t n_users, uint64_t seed, size_t run);
uint64_t MeyersonCoinSeed(uint64_t seed, size_t run);

// Moves every user to its nearest facility (ties to the lowest cluster id),
// drops empty clusters and recomputes the objective with `costs`.
void ReassignToNearestFacility(Clustering& c, const SparseBinaryMatrix& m,
                               std::span<const double> costs);

// Best of cfg.n_runs Meyerson passes on shuffled orders, followed by
// ReassignToNearestFacility. Runs execute in parallel; the winner is the
// lowest objective, ties to the lowest run index.
absl::StatusOr<Clustering> SolveFacilityLocation(const SparseBinaryMatrix& m,
                                                 const FacilityConfig& cfg);
absl::StatusOr<Clustering> SolveFacilityLocation(const SparseBinaryMatrix& m,
                                                 const FacilityConfig& cfg,
                                                 std::span<const double> costs);

absl::StatusOr<Clustering> EnforceMinSizeSimple(Clustering c,
                                                const SparseBinaryMatrix& m,
                                                size_t k);

absl::StatusOr<Clustering> EnforceMinSizeMerge(Clustering c,
                                               const SparseBinaryMatrix& m,
                                               size_t k, double alpha);

// Replaces each center with its cluster's majority row (ties included) and
// recomputes total_cost.
void RecomputeMajorityCenters(Clustering& c, const SparseBinaryMatrix& m);

// Facility location, size enforcement per cfg.strategy, majority centers.
absl::StatusOr<Clustering> ClusterForAnonymity(const SparseBinaryMatrix& m,
                                               const FacilityConfig& cfg);

}  // namespace smoothanon

#endif  // SMOOTHANON_CLUSTERING_H_
