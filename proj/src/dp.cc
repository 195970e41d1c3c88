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

#include "smoothanon/dp.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <unordered_set>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"
#include "smoothanon/random.h"

namespace smoothanon {
namespace {

constexpr double kEpsilonTolerance = 1e-4;

// Sorted sample of `count` distinct values from [0, universe) (Floyd).
std::vector<uint64_t> SampleDistinct(uint64_t universe, uint64_t count,
                                     std::mt19937_64& rng) {
  std::vector<uint64_t> out;
  if (count == 0) return out;
  if (count * 2 > universe) {
    // Dense case: sample the complement instead.
    std::vector<uint64_t> skip = SampleDistinct(universe, universe - count, rng);
    out.reserve(count);
    size_t j = 0;
    for (uint64_t v = 0; v < universe; ++v) {
      if (j < skip.size() && skip[j] == v) {
        ++j;
      } else {
        out.push_back(v);
      }
    }
    return out;
  }
  std::unordered_set<uint64_t> chosen;
  chosen.reserve(count * 2);
  for (uint64_t j = universe - count; j < universe; ++j) {
    const uint64_t t = std::uniform_int_distribution<uint64_t>(0, j)(rng);
    chosen.insert(chosen.contains(t) ? j : t);
  }
  out.assign(chosen.begin(), chosen.end());
  std::sort(out.begin(), out.end());
  return out;
}

Row RespondRow(RowView row, size_t n_features, double flip_p,
               std::mt19937_64& rng) {
  const double keep_p = 1.0 - flip_p / 2.0;
  Row kept;
  kept.reserve(row.size());
  std::bernoulli_distribution keep(keep_p);
  for (FeatureId f : row) {
    if (keep(rng)) kept.push_back(f);
  }

  const uint64_t absent = n_features - row.size();
  const uint64_t created =
      std::binomial_distribution<uint64_t>(absent, flip_p / 2.0)(rng);
  const std::vector<uint64_t> ranks = SampleDistinct(absent, created, rng);

  Row added;
  added.reserve(ranks.size());
  size_t j = 0;
  for (uint64_t rank : ranks) {
    // The rank-th absent feature is rank + (number of present features at or
    // below it).
    uint64_t f = rank + j;
    while (j < row.size() && row[j] <= f) {
      ++j;
      f = rank + j;
    }
    added.push_back(static_cast<FeatureId>(f));
  }

  Row out;
  out.reserve(kept.size() + added.size());
  std::merge(kept.begin(), kept.end(), added.begin(), added.end(),
             std::back_inserter(out));
  return out;
}

}  // namespace

absl::StatusOr<double> EdgeDpFlipProbability(double epsilon) {
  if (!(epsilon >= 0.0)) {
    return absl::InvalidArgumentError("epsilon must be non-negative");
  }
  return 2.0 / (1.0 + std::exp(epsilon));
}

absl::StatusOr<double> NodeDpFlipProbability(double epsilon, size_t m) {
  if (m == 0) return absl::InvalidArgumentError("m must be positive");
  return EdgeDpFlipProbability(epsilon / static_cast<double>(m));
}

absl::StatusOr<double> FlipProbability(const DpParams& params,
                                       size_t n_features) {
  switch (params.mode) {
    case DpMode::kEdge:
      return EdgeDpFlipProbability(params.epsilon);
    case DpMode::kNode:
      return NodeDpFlipProbability(params.epsilon, n_features);
  }
  return absl::InvalidArgumentError("unknown mode");
}

absl::StatusOr<SparseBinaryMatrix> RandomizedResponse(
    const SparseBinaryMatrix& m, double flip_p, uint64_t seed) {
  if (!(flip_p >= 0.0 && flip_p <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("flip probability %g outside [0, 1]", flip_p));
  }
  const int64_t n = static_cast<int64_t>(m.n_users());
  std::vector<Row> rows(n);

#pragma omp parallel for schedule(dynamic, 64)
  for (int64_t u = 0; u < n; ++u) {
    std::mt19937_64 rng = MakeEngine(seed, {static_cast<uint64_t>(u)});
    rows[u] = RespondRow(m.row(static_cast<UserId>(u)), m.n_features(), flip_p,
                         rng);
  }
  return SparseBinaryMatrix::FromValidRows(m.n_features(), std::move(rows));
}

absl::StatusOr<SparseBinaryMatrix> RandomizedResponse(
    const SparseBinaryMatrix& m, const DpParams& params) {
  absl::StatusOr<double> flip_p = FlipProbability(params, m.n_features());
  if (!flip_p.ok()) return flip_p.status();
  return RandomizedResponse(m, *flip_p, params.seed);
}

double JaccardUpperBoundClosedForm(double epsilon, double lambda, double q_cells,
                                   double delta) {
  const double a = 1.0 / (std::exp(epsilon) + 1.0);
  const double c = std::log(2.0 / delta) / 2.0;
  const double main_term = (1.0 - a) / (1.0 + a * (1.0 - lambda) / lambda);
  return main_term + 2.0 * std::sqrt(c / q_cells);
}

absl::StatusOr<double> JaccardUpperBound(double epsilon, double lambda,
                                         double q_cells, double delta) {
  if (!(epsilon >= 0.0)) {
    return absl::InvalidArgumentError("epsilon must be non-negative");
  }
  if (!(lambda > 0.0 && lambda <= 1.0)) {
    return absl::InvalidArgumentError("density must lie in (0, 1]");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    return absl::InvalidArgumentError("delta must lie in (0, 1)");
  }
  if (!(q_cells >= 1.0)) return absl::InvalidArgumentError("Q must be >= 1");

  const double flip_p = 2.0 / (1.0 + std::exp(epsilon));
  const double slack = std::sqrt(std::log(2.0 / delta) / 2.0 / q_cells);
  if (flip_p / 4.0 < slack) {
    return absl::FailedPreconditionError(absl::StrFormat(
        "bound not valid: p/4 = %g < sqrt(C/Q) = %g", flip_p / 4.0, slack));
  }
  return JaccardUpperBoundClosedForm(epsilon, lambda, q_cells, delta);
}

absl::StatusOr<std::optional<double>> MinEpsilonForJaccard(
    double target_jaccard, double lambda, double q_cells, double delta) {
  if (!(target_jaccard > 0.0 && target_jaccard < 1.0)) {
    return absl::InvalidArgumentError("target Jaccard must lie in (0, 1)");
  }
  if (!(lambda > 0.0 && lambda <= 1.0)) {
    return absl::InvalidArgumentError("density must lie in (0, 1]");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    return absl::InvalidArgumentError("delta must lie in (0, 1)");
  }
  if (!(q_cells >= 1.0)) return absl::InvalidArgumentError("Q must be >= 1");

  auto bound = [&](double eps) {
    return JaccardUpperBoundClosedForm(eps, lambda, q_cells, delta);
  };
  if (bound(0.0) >= target_jaccard) return std::optional<double>(0.0);
  if (bound(kMaxSearchEpsilon) < target_jaccard) {
    return std::optional<double>();
  }
  double lo = 0.0, hi = kMaxSearchEpsilon;
  while (hi - lo > kEpsilonTolerance) {
    const double mid = 0.5 * (lo + hi);
    if (bound(mid) >= target_jaccard) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return std::optional<double>(hi);
}

double HardnessEpsilonLowerBound(double alpha, size_t n, size_t m) {
  if (!(alpha > 0.0)) return -std::numeric_limits<double>::infinity();
  const double cells = static_cast<double>(n) * static_cast<double>(m);
  const double l = std::floor(std::pow(cells, 0.9));
  return std::log(alpha * alpha * cells / (4.0 * (l + 1.0)));
}

}  // namespace smoothanon
