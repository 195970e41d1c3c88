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

#include "smoothanon/clustering.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <utility>

#include "absl/strings/str_format.h"
#include "smoothanon/random.h"

namespace smoothanon {
namespace {

constexpr uint64_t kOrderStream = 0x6f72646572;  // "order"
constexpr uint64_t kCoinStream = 0x636f696e;     // "coin"

constexpr size_t kNone = std::numeric_limits<size_t>::max();

struct Nearest {
  uint32_t cluster = 0;
  size_t distance = kNone;
};

// Nearest center among clusters with active[c] (all when `active` is empty).
// Ties go to the lowest cluster id.
Nearest NearestCenter(RowView row, const std::vector<Row>& centers,
                      const std::vector<char>& active = {}) {
  Nearest best;
  for (uint32_t c = 0; c < centers.size(); ++c) {
    if (!active.empty() && !active[c]) continue;
    const size_t d = HammingDistance(row, centers[c]);
    if (d < best.distance) best = {c, d};
  }
  return best;
}

// Removes clusters without members and renumbers the rest in order.
void DropEmptyClusters(Clustering& c) {
  std::vector<size_t> sizes = c.Sizes();
  std::vector<uint32_t> remap(sizes.size());
  uint32_t next = 0;
  for (uint32_t id = 0; id < sizes.size(); ++id) {
    if (sizes[id] == 0) continue;
    remap[id] = next;
    if (next != id) {
      c.centers[next] = std::move(c.centers[id]);
      c.facilities[next] = c.facilities[id];
    }
    ++next;
  }
  c.centers.resize(next);
  c.facilities.resize(next);
  for (uint32_t& a : c.assignment) a = remap[a];
}

double ConnectionCost(const Clustering& c, const SparseBinaryMatrix& m) {
  double total = 0;
  for (UserId u = 0; u < m.n_users(); ++u) {
    total += static_cast<double>(
        HammingDistance(m.row(u), c.centers[c.assignment[u]]));
  }
  return total;
}

Row MajorityRow(std::span<const UserId> members, const SparseBinaryMatrix& m) {
  std::vector<FeatureId> all;
  for (UserId u : members) {
    all.insert(all.end(), m.row(u).begin(), m.row(u).end());
  }
  std::sort(all.begin(), all.end());
  Row out;
  for (size_t i = 0; i < all.size();) {
    size_t j = i;
    while (j < all.size() && all[j] == all[i]) ++j;
    if (2 * (j - i) >= members.size()) out.push_back(all[i]);
    i = j;
  }
  return out;
}

absl::Status CheckEnforceable(const Clustering& c, const SparseBinaryMatrix& m,
                              size_t k) {
  if (k == 0) return absl::InvalidArgumentError("k must be at least 1");
  if (m.n_users() < k) {
    return absl::FailedPreconditionError(absl::StrFormat(
        "cannot anonymize: %d users is fewer than k=%d", m.n_users(), k));
  }
  if (c.assignment.size() != m.n_users()) {
    return absl::InvalidArgumentError("clustering does not match matrix");
  }
  return absl::OkStatus();
}

// Closes the smallest active cluster below `threshold` (ties: lowest id) and
// moves its members to their nearest active center. Returns false when no
// cluster qualifies or only one is active.
bool CloseSmallest(Clustering& c, const SparseBinaryMatrix& m,
                   std::vector<size_t>& sizes, std::vector<char>& active,
                   double threshold) {
  size_t active_count = 0;
  uint32_t victim = 0;
  size_t victim_size = kNone;
  for (uint32_t id = 0; id < sizes.size(); ++id) {
    if (!active[id]) continue;
    ++active_count;
    if (static_cast<double>(sizes[id]) < threshold && sizes[id] < victim_size) {
      victim = id;
      victim_size = sizes[id];
    }
  }
  if (victim_size == kNone || active_count < 2) return false;

  active[victim] = 0;
  for (UserId u = 0; u < m.n_users(); ++u) {
    if (c.assignment[u] != victim) continue;
    const uint32_t target = NearestCenter(m.row(u), c.centers, active).cluster;
    c.assignment[u] = target;
    ++sizes[target];
  }
  sizes[victim] = 0;
  return true;
}

}  // namespace

absl::Status FacilityConfig::Validate() const {
  if (k < 1) return absl::InvalidArgumentError("k must be at least 1");
  if (!(beta_mult > 1.0) || !std::isfinite(beta_mult)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("beta_mult must be a finite value > 1, got %g",
                        beta_mult));
  }
  if (n_runs < 1) return absl::InvalidArgumentError("n_runs must be >= 1");
  return absl::OkStatus();
}

std::vector<size_t> Clustering::Sizes() const {
  std::vector<size_t> sizes(num_clusters(), 0);
  for (uint32_t a : assignment) ++sizes[a];
  return sizes;
}

std::vector<std::vector<UserId>> Clustering::Members() const {
  std::vector<std::vector<UserId>> members(num_clusters());
  for (UserId u = 0; u < assignment.size(); ++u) {
    members[assignment[u]].push_back(u);
  }
  return members;
}

size_t NeighborhoodSize(const FacilityConfig& cfg, size_t n_users) {
  const double raw = std::floor(cfg.beta_mult * static_cast<double>(cfg.k));
  const size_t size = raw < 1.0 ? 1 : static_cast<size_t>(raw);
  return std::min(size, n_users);
}

double OpeningCost(UserId i, const SparseBinaryMatrix& m,
                   const FacilityConfig& cfg) {
  std::vector<size_t> dist(m.n_users());
  for (UserId v = 0; v < m.n_users(); ++v) {
    dist[v] = HammingDistance(m.row(i), m.row(v));
  }
  const size_t take = NeighborhoodSize(cfg, m.n_users());
  std::nth_element(dist.begin(), dist.begin() + (take - 1), dist.end());
  const size_t sum = std::accumulate(dist.begin(), dist.begin() + take,
                                     size_t{0});
  return cfg.cost_multiplier() * static_cast<double>(sum);
}

std::vector<double> OpeningCosts(const SparseBinaryMatrix& m,
                                 const FacilityConfig& cfg) {
  const size_t n = m.n_users();
  std::vector<double> costs(n, 0.0);
  if (n == 0) return costs;

  // CSR inverted index: feature -> users holding it.
  std::vector<size_t> offsets(m.n_features() + 1, 0);
  for (const Row& r : m.rows()) {
    for (FeatureId f : r) ++offsets[f + 1];
  }
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  std::vector<UserId> holders(m.num_entries());
  {
    std::vector<size_t> cursor(offsets.begin(), offsets.end() - 1);
    for (UserId u = 0; u < n; ++u) {
      for (FeatureId f : m.row(u)) holders[cursor[f]++] = u;
    }
  }

  const size_t take = NeighborhoodSize(cfg, n);
  const double multiplier = cfg.cost_multiplier();

#pragma omp parallel
  {
    std::vector<uint32_t> common(n, 0);
    std::vector<size_t> dist(n);
#pragma omp for schedule(dynamic, 16)
    for (int64_t i = 0; i < static_cast<int64_t>(n); ++i) {
      const RowView row = m.row(static_cast<UserId>(i));
      for (FeatureId f : row) {
        for (size_t h = offsets[f]; h < offsets[f + 1]; ++h) ++common[holders[h]];
      }
      for (UserId v = 0; v < n; ++v) {
        dist[v] = row.size() + m.row(v).size() - 2 * size_t{common[v]};
        common[v] = 0;
      }
      std::nth_element(dist.begin(), dist.begin() + (take - 1), dist.end());
      const size_t sum =
          std::accumulate(dist.begin(), dist.begin() + take, size_t{0});
      costs[i] = multiplier * static_cast<double>(sum);
    }
  }
  return costs;
}

absl::StatusOr<Clustering> MeyersonRun(const SparseBinaryMatrix& m,
                                       std::span<const double> costs,
                                       std::span<const UserId> order,
                                       uint64_t seed) {
  if (m.n_users() == 0) return absl::InvalidArgumentError("empty input");
  if (costs.size() != m.n_users() || order.size() != m.n_users()) {
    return absl::InvalidArgumentError("costs/order size mismatch");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);

  Clustering c;
  c.assignment.assign(m.n_users(), 0);
  double opened = 0, connection = 0;
  for (UserId u : order) {
    const Nearest near = c.centers.empty()
                             ? Nearest{}
                             : NearestCenter(m.row(u), c.centers);
    bool open = false;
    if (near.distance == kNone) {
      open = true;
    } else if (near.distance > 0) {
      const double d = static_cast<double>(near.distance);
      const double prob = costs[u] <= 0.0 ? 1.0 : std::min(1.0, d / costs[u]);
      open = coin(rng) < prob;
    }
    if (open) {
      c.assignment[u] = static_cast<uint32_t>(c.centers.size());
      c.centers.emplace_back(m.row(u).begin(), m.row(u).end());
      c.facilities.push_back(u);
      opened += costs[u];
    } else {
      c.assignment[u] = near.cluster;
      connection += static_cast<double>(near.distance);
    }
  }
  c.total_cost = connection;
  c.objective = opened + connection;
  return c;
}

std::vector<UserId> MeyersonOrder(size_t n_users, uint64_t seed, size_t run) {
  std::vector<UserId> order(n_users);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng = MakeEngine(seed, {kOrderStream, run});
  std::shuffle(order.begin(), order.end(), rng);
  return order;
}

uint64_t MeyersonCoinSeed(uint64_t seed, size_t run) {
  return DeriveSeed(seed, {kCoinStream, run});
}

void ReassignToNearestFacility(Clustering& c, const SparseBinaryMatrix& m,
                               std::span<const double> costs) {
  const int64_t n = static_cast<int64_t>(m.n_users());
#pragma omp parallel for schedule(dynamic, 64)
  for (int64_t u = 0; u < n; ++u) {
    c.assignment[u] = NearestCenter(m.row(static_cast<UserId>(u)), c.centers)
                          .cluster;
  }
  DropEmptyClusters(c);
  c.total_cost = ConnectionCost(c, m);
  double opened = 0;
  for (UserId f : c.facilities) opened += costs[f];
  c.objective = opened + c.total_cost;
}

absl::StatusOr<Clustering> SolveFacilityLocation(const SparseBinaryMatrix& m,
                                                 const FacilityConfig& cfg) {
  if (absl::Status st = cfg.Validate(); !st.ok()) return st;
  const std::vector<double> costs = OpeningCosts(m, cfg);
  return SolveFacilityLocation(m, cfg, costs);
}

absl::StatusOr<Clustering> SolveFacilityLocation(const SparseBinaryMatrix& m,
                                                 const FacilityConfig& cfg,
                                                 std::span<const double> costs) {
  if (absl::Status st = cfg.Validate(); !st.ok()) return st;
  if (m.n_users() == 0) return absl::InvalidArgumentError("empty input");

  const int64_t runs = static_cast<int64_t>(cfg.n_runs);
  std::vector<Clustering> results(runs);
#pragma omp parallel for schedule(dynamic, 1)
  for (int64_t r = 0; r < runs; ++r) {
    const std::vector<UserId> order =
        MeyersonOrder(m.n_users(), cfg.seed, static_cast<size_t>(r));
    // Only fails on empty input or size mismatch, both excluded above.
    results[r] = *MeyersonRun(m, costs, order,
                              MeyersonCoinSeed(cfg.seed, static_cast<size_t>(r)));
  }

  size_t best = 0;
  for (size_t r = 1; r < results.size(); ++r) {
    if (results[r].objective < results[best].objective) best = r;
  }
  Clustering c = std::move(results[best]);
  ReassignToNearestFacility(c, m, costs);
  return c;
}

absl::StatusOr<Clustering> EnforceMinSizeSimple(Clustering c,
                                                const SparseBinaryMatrix& m,
                                                size_t k) {
  if (absl::Status st = CheckEnforceable(c, m, k); !st.ok()) return st;
  std::vector<size_t> sizes = c.Sizes();
  std::vector<char> active(sizes.size(), 1);
  while (CloseSmallest(c, m, sizes, active, static_cast<double>(k))) {
  }
  DropEmptyClusters(c);
  c.total_cost = ConnectionCost(c, m);
  return c;
}

absl::StatusOr<Clustering> EnforceMinSizeMerge(Clustering c,
                                               const SparseBinaryMatrix& m,
                                               size_t k, double alpha) {
  if (absl::Status st = CheckEnforceable(c, m, k); !st.ok()) return st;
  std::vector<size_t> sizes = c.Sizes();
  std::vector<char> active(sizes.size(), 1);
  while (CloseSmallest(c, m, sizes, active, alpha * static_cast<double>(k))) {
  }

  std::vector<std::vector<UserId>> members = c.Members();
  auto nearest_other = [&](uint32_t from, bool small_only) {
    Nearest best;
    for (uint32_t id = 0; id < members.size(); ++id) {
      if (id == from || !active[id]) continue;
      if (small_only && members[id].size() >= k) continue;
      const size_t d = HammingDistance(c.centers[from], c.centers[id]);
      if (d < best.distance) best = {id, d};
    }
    return best;
  };

  while (true) {
    size_t active_count = 0;
    uint32_t small = 0;
    size_t small_size = kNone;
    for (uint32_t id = 0; id < members.size(); ++id) {
      if (!active[id]) continue;
      ++active_count;
      if (members[id].size() < k && members[id].size() < small_size) {
        small = id;
        small_size = members[id].size();
      }
    }
    if (small_size == kNone || active_count < 2) break;

    const Nearest partner = nearest_other(small, /*small_only=*/true);
    if (partner.distance != kNone) {
      // Two clusters below k never exceed 2k together.
      std::vector<UserId>& into = members[partner.cluster];
      into.insert(into.end(), members[small].begin(), members[small].end());
      members[small].clear();
      active[small] = 0;
      continue;
    }

    const uint32_t large = nearest_other(small, /*small_only=*/false).cluster;
    if (members[large].size() + small_size <= 2 * k) {
      std::vector<UserId>& into = members[large];
      into.insert(into.end(), members[small].begin(), members[small].end());
      members[small].clear();
      active[small] = 0;
      continue;
    }
    // Split: hand the small cluster the k - |small| members of the large one
    // closest to the small cluster's center. The large cluster keeps more
    // than k members because |large| + |small| > 2k.
    std::vector<UserId>& donor = members[large];
    std::stable_sort(donor.begin(), donor.end(), [&](UserId a, UserId b) {
      return HammingDistance(m.row(a), c.centers[small]) <
             HammingDistance(m.row(b), c.centers[small]);
    });
    const size_t moved = k - small_size;
    members[small].insert(members[small].end(), donor.begin(),
                          donor.begin() + moved);
    donor.erase(donor.begin(), donor.begin() + moved);
    std::sort(donor.begin(), donor.end());
  }

  for (uint32_t id = 0; id < members.size(); ++id) {
    for (UserId u : members[id]) c.assignment[u] = id;
  }
  DropEmptyClusters(c);
  c.total_cost = ConnectionCost(c, m);
  return c;
}

void RecomputeMajorityCenters(Clustering& c, const SparseBinaryMatrix& m) {
  const std::vector<std::vector<UserId>> members = c.Members();
  const int64_t clusters = static_cast<int64_t>(members.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (int64_t id = 0; id < clusters; ++id) {
    c.centers[id] = MajorityRow(members[id], m);
  }
  c.total_cost = ConnectionCost(c, m);
}

absl::StatusOr<Clustering> ClusterForAnonymity(const SparseBinaryMatrix& m,
                                               const FacilityConfig& cfg) {
  if (absl::Status st = cfg.Validate(); !st.ok()) return st;
  if (m.n_users() < cfg.k) {
    return absl::FailedPreconditionError(absl::StrFormat(
        "cannot anonymize: %d users is fewer than k=%d", m.n_users(), cfg.k));
  }
  absl::StatusOr<Clustering> solved = SolveFacilityLocation(m, cfg);
  if (!solved.ok()) return solved.status();

  absl::StatusOr<Clustering> enforced =
      cfg.strategy == SizeStrategy::kCloseAndReassign
          ? EnforceMinSizeSimple(*std::move(solved), m, cfg.k)
          : EnforceMinSizeMerge(*std::move(solved), m, cfg.k, cfg.alpha());
  if (!enforced.ok()) return enforced.status();
  RecomputeMajorityCenters(*enforced, m);
  return enforced;
}

}  // namespace smoothanon
