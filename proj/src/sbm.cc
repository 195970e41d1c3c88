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

#include "absl/strings/str_format.h"
#include "smoothanon/random.h"

namespace smoothanon {

absl::Status SbmParams::Validate() const {
  if (r < 1 || s < 1) {
    return absl::InvalidArgumentError("r and s must be at least 1");
  }
  if (!(0.0 <= p && p <= q && q <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("need 0 <= p <= q <= 1, got p=%g q=%g", p, q));
  }
  return absl::OkStatus();
}

absl::StatusOr<SparseBinaryMatrix> GenerateSbm(const SbmParams& params) {
  if (absl::Status st = params.Validate(); !st.ok()) return st;
  const int64_t n = static_cast<int64_t>(params.n());
  const size_t s = params.s;
  std::vector<Row> rows(n);

#pragma omp parallel for schedule(dynamic, 16)
  for (int64_t u = 0; u < n; ++u) {
    Row& row = rows[u];
    const size_t block = static_cast<size_t>(u) / s;
    for (int64_t f = 0; f < n; ++f) {
      const double prob =
          static_cast<size_t>(f) / s == block ? params.q : params.p;
      const uint64_t bits = DeriveSeed(
          params.seed, {static_cast<uint64_t>(u), static_cast<uint64_t>(f)});
      if (ToUnitInterval(bits) < prob) row.push_back(static_cast<FeatureId>(f));
    }
  }
  return SparseBinaryMatrix::FromValidRows(params.n(), std::move(rows));
}

std::vector<uint32_t> SbmBlocks(const SbmParams& params) {
  std::vector<uint32_t> blocks(params.n());
  for (size_t u = 0; u < blocks.size(); ++u) {
    blocks[u] = static_cast<uint32_t>(u / params.s);
  }
  return blocks;
}

double SbmSuppressionMinK(size_t n, double q) {
  return 2.0 * std::log(static_cast<double>(n)) / std::log(1.0 / q);
}

double SbmSuppressionBoundValue(double n, double q) {
  return (2.0 * std::log(n) + 10.0) / std::log(1.0 / q) * n;
}

absl::StatusOr<size_t> SbmSuppressionEdgeBound(size_t n, double q, size_t k) {
  if (!(q > 0.0 && q < 1.0)) {
    return absl::InvalidArgumentError("q must lie in (0, 1)");
  }
  if (n < 1) return absl::InvalidArgumentError("n must be positive");
  const double min_k = SbmSuppressionMinK(n, q);
  if (static_cast<double>(k) < min_k) {
    return absl::FailedPreconditionError(absl::StrFormat(
        "bound inapplicable: k=%d below 2 ln n / ln(1/q) = %.3f", k, min_k));
  }
  return static_cast<size_t>(
      std::ceil(SbmSuppressionBoundValue(static_cast<double>(n), q)));
}

}  // namespace smoothanon
