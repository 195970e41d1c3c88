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

#include <random>

#include "gtest/gtest.h"
#include "test_util.h"

namespace smoothanon {
namespace {

using ::smoothanon::testing::Matrix;
using ::smoothanon::testing::RandomMatrix;

// Independent check: every labeling in [0, n)^n with parts >= k, and every
// keep/drop choice on tied (part, feature) cells, scored by building the
// output matrix explicitly.
double NaiveSmoothOptimum(const SparseBinaryMatrix& m, size_t k) {
  const size_t n = m.n_users(), f_count = m.n_features();
  std::vector<uint32_t> label(n, 0);
  double best = -1;
  while (true) {
    std::vector<size_t> sizes(n, 0);
    for (uint32_t l : label) ++sizes[l];
    bool valid = true;
    for (size_t s : sizes) valid &= s == 0 || s >= k;
    if (valid) {
      // holders[p][f]
      std::vector<std::vector<size_t>> holders(n, std::vector<size_t>(f_count));
      for (UserId u = 0; u < n; ++u) {
        for (FeatureId f = 0; f < f_count; ++f) holders[label[u]][f] += m.Contains(u, f);
      }
      std::vector<std::pair<size_t, FeatureId>> ties;
      for (size_t p = 0; p < n; ++p) {
        for (FeatureId f = 0; f < f_count; ++f) {
          if (sizes[p] > 0 && 2 * holders[p][f] == sizes[p]) ties.push_back({p, f});
        }
      }
      for (size_t mask = 0; mask < (size_t{1} << ties.size()); ++mask) {
        std::vector<Row> rows(n);
        for (UserId u = 0; u < n; ++u) {
          const size_t p = label[u];
          for (FeatureId f = 0; f < f_count; ++f) {
            bool keep = 2 * holders[p][f] > sizes[p];
            for (size_t t = 0; t < ties.size(); ++t) {
              if (ties[t] == std::pair<size_t, FeatureId>{p, f}) keep = mask >> t & 1;
            }
            if (keep) rows[u].push_back(f);
          }
        }
        best = std::max(best,
                        Jaccard(*ComputeDiffStats(m, Matrix(f_count, rows))));
      }
    }
    size_t i = 0;
    while (i < n && ++label[i] == n) label[i++] = 0;
    if (i == n) break;
  }
  return best;
}

TEST(BruteForceSmoothTest, IdenticalRows) {
  const SparseBinaryMatrix m = Matrix(3, std::vector<Row>(5, Row{0, 2}));
  for (size_t k = 1; k <= 5; ++k) {
    const OracleResult r = *BruteForceSmoothOptimum(m, k);
    EXPECT_DOUBLE_EQ(r.best_jaccard, 1.0);
    EXPECT_EQ(r.best_partition.size(), 1u);
  }
}

TEST(BruteForceSmoothTest, TwoSingletonsTie) {
  // One part is forced. Including both tied features gives 2/4; keeping one
  // gives 1/3 and keeping none gives 0.
  const OracleResult r = *BruteForceSmoothOptimum(Matrix(2, {{0}, {1}}), 2);
  EXPECT_DOUBLE_EQ(r.best_jaccard, 0.5);
  EXPECT_EQ(r.enumerated, 1u);
}

TEST(BruteForceSmoothTest, SeparatedPairs) {
  const SparseBinaryMatrix m = Matrix(4, {{0, 1}, {2, 3}, {0, 1}, {2, 3}});
  const OracleResult r = *BruteForceSmoothOptimum(m, 2);
  EXPECT_DOUBLE_EQ(r.best_jaccard, 1.0);
  EXPECT_EQ(r.best_partition,
            std::vector<std::vector<UserId>>({{0, 2}, {1, 3}}));
  // {0123}, {01|23}, {02|13}, {03|12}.
  EXPECT_EQ(r.enumerated, 4u);
}

TEST(BruteForceSmoothTest, EnumeratesBellNumber) {
  const SparseBinaryMatrix m = Matrix(2, {{0}, {1}, {0}, {1}, {}});
  EXPECT_EQ(BruteForceSmoothOptimum(m, 1)->enumerated, 52u);
}

TEST(BruteForceSmoothTest, MatchesNaiveEnumeration) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    const size_t n = 2 + trial % 4;
    const SparseBinaryMatrix m = RandomMatrix(n, 3, 0.45, rng);
    for (size_t k = 1; k <= std::min<size_t>(n, 3); ++k) {
      const OracleResult r = *BruteForceSmoothOptimum(m, k);
      EXPECT_NEAR(r.best_jaccard, NaiveSmoothOptimum(m, k), 1e-12)
          << "trial " << trial << " k " << k;
      size_t covered = 0;
      for (const auto& part : r.best_partition) {
        EXPECT_GE(part.size(), k);
        covered += part.size();
      }
      EXPECT_EQ(covered, n);
    }
  }
}

TEST(BruteForceSmoothTest, Errors) {
  const SparseBinaryMatrix big = Matrix(1, std::vector<Row>(11));
  EXPECT_FALSE(BruteForceSmoothOptimum(big, 2).ok());
  const SparseBinaryMatrix m = Matrix(1, {{0}, {}});
  EXPECT_FALSE(BruteForceSmoothOptimum(m, 0).ok());
  EXPECT_FALSE(BruteForceSmoothOptimum(m, 3).ok());
}

TEST(BruteForceFacilityLocationTest, OnePoint) {
  const std::vector<Row> points = {{0, 1}};
  const std::vector<double> costs = {4.5};
  const FacilityLocationOptimum opt = *BruteForceFacilityLocation(points, costs);
  EXPECT_DOUBLE_EQ(opt.objective, 4.5);
  EXPECT_EQ(opt.open, std::vector<size_t>({0}));
}

TEST(BruteForceFacilityLocationTest, CheaperDuplicateOpens) {
  const std::vector<Row> points = {{2}, {2}};
  const std::vector<double> costs = {1, 5};
  const FacilityLocationOptimum opt = *BruteForceFacilityLocation(points, costs);
  EXPECT_DOUBLE_EQ(opt.objective, 1.0);
  EXPECT_EQ(opt.open, std::vector<size_t>({0}));
}

TEST(BruteForceFacilityLocationTest, ThreePointsOnALine) {
  // {} - {0} - {0, 1}: distances 1, 1 and 2. Of the 7 subsets, opening only
  // the middle point costs 1 + 1 + 1 = 3; the next best ({0}) costs 3 + 1 + 2.
  const std::vector<Row> points = {{}, {0}, {0, 1}};
  const std::vector<double> costs = {3, 1, 3};
  const FacilityLocationOptimum opt = *BruteForceFacilityLocation(points, costs);
  EXPECT_DOUBLE_EQ(opt.objective, 3.0);
  EXPECT_EQ(opt.open, std::vector<size_t>({1}));

  const std::vector<double> cheap = {0.5, 0.5, 0.5};
  EXPECT_DOUBLE_EQ(BruteForceFacilityLocation(points, cheap)->objective, 1.5);
}

TEST(BruteForceFacilityLocationTest, Errors) {
  EXPECT_FALSE(BruteForceFacilityLocation({}, {}).ok());
  const std::vector<Row> points(13);
  const std::vector<double> costs(13, 1.0);
  EXPECT_FALSE(BruteForceFacilityLocation(points, costs).ok());
  const std::vector<double> short_costs(2, 1.0);
  EXPECT_FALSE(
      BruteForceFacilityLocation(std::span(points).first(3), short_costs).ok());
}

}  // namespace
}  // namespace smoothanon
