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

#ifndef SMOOTHANON_SBM_H_
#define SMOOTHANON_SBM_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "smoothanon/sparse_matrix.h"

namespace smoothanon {

// Bipartite stochastic block model: r blocks of s users and s features each.
// A cell (u, f) is present with probability q when u / s == f / s and with
// probability p otherwise.
struct SbmParams {
  size_t r = 1;
  size_t s = 1;
  double q = 0.0;
  double p = 0.0;
  uint64_t seed = 0;

  size_t n() const { return r * s; }
  // Expected number of in-block entries per user (q * s).
  double expected_internal_degree() const { return q * static_cast<double>(s); }
  // Expected number of cross-block entries per user (p * (n - s)).
  double expected_external_degree() const {
    return p * static_cast<double>(n() - s);
  }
  double expected_entries() const {
    return static_cast<double>(n()) *
           (expected_internal_degree() + expected_external_degree());
  }

  absl::Status Validate() const;
};

// Every cell is an independent draw keyed on (seed, u, f), so the result does
// not depend on how rows are scheduled across threads.
absl::StatusOr<SparseBinaryMatrix> GenerateSbm(const SbmParams& params);

// Block id of each user (u / s); the planted clustering.
std::vector<uint32_t> SbmBlocks(const SbmParams& params);

// Upper bound t * n on the entries of any k-anonymous subgraph of an SBM
// graph, t = (2 ln n + 10) / ln(1/q). Only valid for k >= 2 ln n / ln(1/q);
// below that threshold a FailedPrecondition error is returned.
absl::StatusOr<size_t> SbmSuppressionEdgeBound(size_t n, double q, size_t k);

// t * n as a real number, without domain checks.
double SbmSuppressionBoundValue(double n, double q);

// 2 ln n / ln(1/q), the smallest k for which the bound above applies.
double SbmSuppressionMinK(size_t n, double q);

}  // namespace smoothanon

#endif  // SMOOTHANON_SBM_H_
