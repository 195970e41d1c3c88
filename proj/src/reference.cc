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

#include "smoothanon/reference.h"

#include <algorithm>
#include <cstdint>

#include "smoothanon/random.h"

namespace smoothanon::reference {
namespace {

std::vector<std::vector<UserId>> Groups(std::span<const uint32_t> assignment) {
  std::vector<std::vector<UserId>> groups;
  for (UserId u = 0; u < assignment.size(); ++u) {
    if (assignment[u] >= groups.size()) groups.resize(assignment[u] + 1);
    groups[assignment[u]].push_back(u);
  }
  return groups;
}

}  // namespace

std::vector<double> OpeningCosts(const SparseBinaryMatrix& m,
                                 const FacilityConfig& cfg) {
  const size_t n = m.n_users();
  const size_t take = NeighborhoodSize(cfg, n);
  std::vector<double> costs(n);
  for (UserId i = 0; i < n; ++i) {
    std::vector<size_t> dist;
    for (UserId v = 0; v < n; ++v) {
      dist.push_back(HammingDistance(m.row(i), m.row(v)));
    }
    std::sort(dist.begin(), dist.end());
    size_t sum = 0;
    for (size_t j = 0; j < take; ++j) sum += dist[j];
    costs[i] = cfg.cost_multiplier() * static_cast<double>(sum);
  }
  return costs;
}

SparseBinaryMatrix SmoothRound(const SparseBinaryMatrix& m,
                               std::span<const uint32_t> assignment) {
  std::vector<Row> rows(m.n_users());
  for (const std::vector<UserId>& group : Groups(assignment)) {
    for (FeatureId f = 0; f < m.n_features(); ++f) {
      size_t holders = 0;
      for (UserId u : group) holders += m.Contains(u, f);
      if (holders > 0 && 2 * holders >= group.size()) {
        for (UserId u : group) rows[u].push_back(f);
      }
    }
  }
  return SparseBinaryMatrix::FromValidRows(m.n_features(), std::move(rows));
}

SparseBinaryMatrix SuppressRound(const SparseBinaryMatrix& m,
                                 std::span<const uint32_t> assignment) {
  std::vector<Row> rows(m.n_users());
  for (const std::vector<UserId>& group : Groups(assignment)) {
    if (group.empty()) continue;
    for (FeatureId f = 0; f < m.n_features(); ++f) {
      bool all = true;
      for (UserId u : group) all = all && m.Contains(u, f);
      if (all) {
        for (UserId u : group) rows[u].push_back(f);
      }
    }
  }
  return SparseBinaryMatrix::FromValidRows(m.n_features(), std::move(rows));
}

absl::StatusOr<SparseBinaryMatrix> GenerateSbm(const SbmParams& params) {
  if (absl::Status st = params.Validate(); !st.ok()) return st;
  const size_t n = params.n();
  std::vector<Row> rows(n);
  for (size_t u = 0; u < n; ++u) {
    for (size_t f = 0; f < n; ++f) {
      const double prob = (u / params.s == f / params.s) ? params.q : params.p;
      if (ToUnitInterval(DeriveSeed(params.seed, {u, f})) < prob) {
        rows[u].push_back(static_cast<FeatureId>(f));
      }
    }
  }
  return SparseBinaryMatrix::Create(n, std::move(rows));
}

std::vector<uint32_t> NearestCenters(const SparseBinaryMatrix& m,
                                     const std::vector<Row>& centers) {
  std::vector<uint32_t> out(m.n_users(), 0);
  for (UserId u = 0; u < m.n_users(); ++u) {
    size_t best = SIZE_MAX;
    for (uint32_t c = 0; c < centers.size(); ++c) {
      const size_t d = HammingDistance(m.row(u), centers[c]);
      if (d < best) {
        best = d;
        out[u] = c;
      }
    }
  }
  return out;
}

}  // namespace smoothanon::reference
