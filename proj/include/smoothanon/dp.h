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

#ifndef SMOOTHANON_DP_H_
#define SMOOTHANON_DP_H_

#include <cstddef>
#include <cstdint>
#include <optional>

#include "absl/status/statusor.h"
#include "smoothanon/sparse_matrix.h"

namespace smoothanon {

enum class DpMode { kEdge, kNode };

struct DpParams {
  double epsilon = 1.0;
  DpMode mode = DpMode::kEdge;
  uint64_t seed = 0;
};

// Resampling probability for epsilon-edge DP: 2 / (1 + e^epsilon).
absl::StatusOr<double> EdgeDpFlipProbability(double epsilon);

// Resampling probability for epsilon-node DP over m features:
// 2 / (1 + e^(epsilon / m)).
absl::StatusOr<double> NodeDpFlipProbability(double epsilon, size_t m);

absl::StatusOr<double> FlipProbability(const DpParams& params,
                                       size_t n_features);

// Randomized response. Each cell is independently resampled uniformly from
// {0, 1} with probability `flip_p`, so existing entries survive with
// probability 1 - flip_p / 2 and absent cells appear with probability
// flip_p / 2.
//
// Work is proportional to n + |E| + #created: per row the number of created
// cells is drawn from a binomial and their positions are sampled without
// replacement among the row's absent cells. Each row uses its own stream
// keyed on (seed, user).
absl::StatusOr<SparseBinaryMatrix> RandomizedResponse(
    const SparseBinaryMatrix& m, double flip_p, uint64_t seed);

absl::StatusOr<SparseBinaryMatrix> RandomizedResponse(
    const SparseBinaryMatrix& m, const DpParams& params);

// High-probability upper bound on the Jaccard similarity between the input
// and the output of edge-DP randomized response:
//
//   (1 - a) / (1 + a (1 - lambda) / lambda) + 2 sqrt(C / Q),
//   a = 1 / (e^epsilon + 1),  C = ln(2 / delta) / 2,
//
// where lambda is the density and Q = n * m. Holds with probability at least
// 1 - delta when flip_p / 4 >= sqrt(C / Q).
double JaccardUpperBoundClosedForm(double epsilon, double lambda, double q_cells,
                                   double delta);

// As above, but rejects arguments outside the bound's domain and returns
// FailedPrecondition when flip_p / 4 < sqrt(C / Q).
absl::StatusOr<double> JaccardUpperBound(double epsilon, double lambda,
                                         double q_cells, double delta);

inline constexpr double kMaxSearchEpsilon = 100.0;

// Smallest epsilon in [0, kMaxSearchEpsilon] at which the closed-form bound
// reaches `target_jaccard`, to absolute tolerance 1e-4. std::nullopt means the
// target is not reached below kMaxSearchEpsilon.
absl::StatusOr<std::optional<double>> MinEpsilonForJaccard(
    double target_jaccard, double lambda, double q_cells, double delta);

// Lower bound on epsilon for any edge-DP mechanism whose expected Jaccard is
// at least alpha on every input: ln(alpha^2 n m / (4 (l + 1))) with
// l = floor((n m)^0.9). Negative values carry no information.
double HardnessEpsilonLowerBound(double alpha, size_t n, size_t m);

}  // namespace smoothanon

#endif  // SMOOTHANON_DP_H_
