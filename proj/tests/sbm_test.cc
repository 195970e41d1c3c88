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

#include "smoothanon/sbm.h"

#include <cmath>
#include <numbers>
#include <sstream>

#include "gtest/gtest.h"
#include "smoothanon/edge_list.h"
#include "smoothanon/reference.h"

namespace smoothanon {
namespace {

TEST(SbmParamsTest, DerivedQuantities) {
  const SbmParams p{.r = 16, .s = 64, .q = 0.8, .p = 0.01};
  EXPECT_EQ(p.n(), 1024);
  EXPECT_DOUBLE_EQ(p.expected_internal_degree(), 51.2);
  EXPECT_DOUBLE_EQ(p.expected_external_degree(), 9.6);
  EXPECT_NEAR(p.expected_entries(), 62259.2, 1e-9);
}

TEST(SbmParamsTest, Validation) {
  EXPECT_FALSE((SbmParams{.r = 2, .s = 2, .q = 0.2, .p = 0.5}).Validate().ok());
  EXPECT_FALSE((SbmParams{.r = 0, .s = 2, .q = 0.5, .p = 0.1}).Validate().ok());
  EXPECT_FALSE((SbmParams{.r = 2, .s = 2, .q = 1.5, .p = 0.1}).Validate().ok());
  EXPECT_FALSE((SbmParams{.r = 2, .s = 2, .q = 0.5, .p = -0.1}).Validate().ok());
  EXPECT_FALSE(GenerateSbm({.r = 2, .s = 2, .q = 0.2, .p = 0.5}).ok());
}

TEST(GenerateSbmTest, CompleteBlocks) {
  const SparseBinaryMatrix m = *GenerateSbm({.r = 4, .s = 5, .q = 1, .p = 0});
  EXPECT_EQ(m.num_entries(), 4 * 5 * 5);
  for (UserId u = 0; u < m.n_users(); ++u) {
    const FeatureId first = (u / 5) * 5;
    EXPECT_EQ(m.rows()[u], Row({first, first + 1, first + 2, first + 3, first + 4}));
  }
  for (size_t k = 1; k <= 5; ++k) EXPECT_TRUE(VerifyKAnonymous(m, k));
  EXPECT_FALSE(VerifyKAnonymous(m, 6));
}

TEST(GenerateSbmTest, ErdosRenyiWhenQEqualsP) {
  const SbmParams params{.r = 5, .s = 40, .q = 0.1, .p = 0.1, .seed = 4};
  const SparseBinaryMatrix m = *GenerateSbm(params);
  const double cells = 200.0 * 200.0;
  const double sigma = std::sqrt(cells * 0.1 * 0.9);
  EXPECT_NEAR(static_cast<double>(m.num_entries()), cells * 0.1, 4 * sigma);
}

TEST(GenerateSbmTest, DeterministicAndSeedDependent) {
  const SbmParams params{.r = 8, .s = 16, .q = 0.7, .p = 0.05, .seed = 99};
  const SparseBinaryMatrix a = *GenerateSbm(params);
  const SparseBinaryMatrix b = *GenerateSbm(params);
  EXPECT_EQ(a, b);
  std::ostringstream sa, sb;
  WriteEdgeList(a, sa);
  WriteEdgeList(b, sb);
  EXPECT_EQ(sa.str(), sb.str());

  SbmParams other = params;
  other.seed = 100;
  EXPECT_NE(*GenerateSbm(other), a);
}

TEST(GenerateSbmTest, MatchesSerialReference) {
  const SbmParams params{.r = 6, .s = 20, .q = 0.6, .p = 0.03, .seed = 12};
  EXPECT_EQ(*GenerateSbm(params), *reference::GenerateSbm(params));
}

TEST(GenerateSbmTest, PlantedPartitionEntryCount) {
  // 30 seeds; the sample mean has std ~ 240 / sqrt(30).
  double total = 0;
  for (uint64_t seed = 0; seed < 30; ++seed) {
    total += static_cast<double>(
        GenerateSbm({.r = 16, .s = 64, .q = 0.8, .p = 0.01, .seed = seed})
            ->num_entries());
  }
  EXPECT_NEAR(total / 30.0, 62259.2, 4 * 240.0);
}

TEST(SbmBlocksTest, PlantedPartition) {
  const std::vector<uint32_t> blocks = SbmBlocks({.r = 3, .s = 2});
  EXPECT_EQ(blocks, std::vector<uint32_t>({0, 0, 1, 1, 2, 2}));
}

TEST(SbmSuppressionBoundTest, DefaultInstance) {
  // t = (2 ln 1024 + 10) / ln 1.25 = 106.93987556735..., t * 1024 = 109506.43.
  EXPECT_EQ(*SbmSuppressionEdgeBound(1024, 0.8, 64), 109507);
  EXPECT_NEAR(SbmSuppressionMinK(1024, 0.8), 62.12567439, 1e-7);
}

TEST(SbmSuppressionBoundTest, UnitLogarithms) {
  EXPECT_NEAR(SbmSuppressionBoundValue(std::numbers::e, 1.0 / std::numbers::e),
              12.0 * std::numbers::e, 1e-12);
}

TEST(SbmSuppressionBoundTest, VanishesAsQShrinks) {
  EXPECT_LT(SbmSuppressionBoundValue(1024, 1e-300), 1024 * 0.04);
  EXPECT_LT(SbmSuppressionBoundValue(1024, 1e-300),
            SbmSuppressionBoundValue(1024, 1e-10));
}

TEST(SbmSuppressionBoundTest, Errors) {
  EXPECT_EQ(SbmSuppressionEdgeBound(1024, 0.8, 62).status().code(),
            absl::StatusCode::kFailedPrecondition);
  EXPECT_FALSE(SbmSuppressionEdgeBound(1024, 1.0, 64).ok());
  EXPECT_FALSE(SbmSuppressionEdgeBound(1024, 0.0, 64).ok());
}

}  // namespace
}  // namespace smoothanon
