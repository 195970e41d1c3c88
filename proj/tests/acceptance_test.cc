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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits non-zero
// if any criterion fails. All tolerances and runtime budgets are fixed here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "absl/strings/str_format.h"
#include "smoothanon/anonymizer.h"
#include "smoothanon/clustering.h"
#include "smoothanon/dp.h"
#include "smoothanon/oracle.h"
#include "smoothanon/sbm.h"
#include "smoothanon/shard.h"
#include "smoothanon/sparse_matrix.h"

namespace smoothanon {
namespace {

// Planted-partition instance: 16 blocks of 64 users.
SbmParams PlantedSbm(uint64_t seed) {
  return {.r = 16, .s = 64, .q = 0.8, .p = 0.01, .seed = seed};
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  std::string id;
  double budget_seconds;
  std::function<Outcome()> run;
};

SparseBinaryMatrix RandomMatrix(size_t n, size_t m, double density,
                                std::mt19937_64& rng) {
  std::bernoulli_distribution cell(density);
  std::vector<Row> rows(n);
  for (Row& row : rows) {
    for (FeatureId f = 0; f < m; ++f) {
      if (cell(rng)) row.push_back(f);
    }
  }
  return *SparseBinaryMatrix::Create(m, std::move(rows));
}

double JaccardOf(const SparseBinaryMatrix& a, const SparseBinaryMatrix& b) {
  return Jaccard(*ComputeDiffStats(a, b));
}

// 1. Generator entry count.
Outcome SbmEntryCount() {
  constexpr double kExpected = 62259.2;
  constexpr double kTolerance = 1000.0;
  double total = 0;
  for (uint64_t seed = 0; seed < 30; ++seed) {
    total += static_cast<double>(GenerateSbm(PlantedSbm(seed))->num_entries());
  }
  const double mean = total / 30.0;
  return {std::abs(mean - kExpected) <= kTolerance,
          absl::StrFormat("mean |E| = %.1f over 30 seeds (target %.1f +- %.0f)",
                          mean, kExpected, kTolerance)};
}

// 2. Planted clusters: majority rounding keeps most edges, intersection
// rounding keeps almost none.
Outcome GroundTruthSeparation() {
  constexpr double kExpected = 51.2 / 73.6;
  constexpr double kTolerance = 0.03;
  constexpr double kSuppressMax = 0.10;
  double smooth_min = 1, smooth_max = 0, suppress_max = 0;
  for (uint64_t seed = 0; seed < 10; ++seed) {
    const SbmParams params = PlantedSbm(seed);
    const SparseBinaryMatrix m = *GenerateSbm(params);
    const std::vector<uint32_t> blocks = SbmBlocks(params);
    const double smooth =
        JaccardOf(m, *SmoothRoundWithGivenClusters(m, blocks));
    const double suppress = JaccardOf(m, SuppressRound(m, blocks));
    smooth_min = std::min(smooth_min, smooth);
    smooth_max = std::max(smooth_max, smooth);
    suppress_max = std::max(suppress_max, suppress);
  }
  const bool pass = smooth_min >= kExpected - kTolerance &&
                    smooth_max <= kExpected + kTolerance &&
                    suppress_max < kSuppressMax;
  return {pass, absl::StrFormat(
                    "smooth J in [%.4f, %.4f] (target %.4f +- %.2f), "
                    "suppress J max %.4f (< %.2f)",
                    smooth_min, smooth_max, kExpected, kTolerance,
                    suppress_max, kSuppressMax)};
}

// 3. Full pipeline, k = 8.
Outcome PipelineQualityGap() {
  constexpr double kSmoothMin = 0.55;
  constexpr double kSuppressMax = 0.30;
  double smooth = 0, suppress = 0;
  for (uint64_t seed = 0; seed < 10; ++seed) {
    const SparseBinaryMatrix m = *GenerateSbm(PlantedSbm(seed));
    const FacilityConfig cfg{.k = 8, .beta_mult = 2, .n_runs = 10, .seed = seed};
    smooth += Anonymize(m, 8, AnonymizationMode::kSmooth, cfg)->jaccard;
    suppress += Anonymize(m, 8, AnonymizationMode::kSuppress, cfg)->jaccard;
  }
  smooth /= 10;
  suppress /= 10;
  return {smooth >= kSmoothMin && suppress <= kSuppressMax,
          absl::StrFormat("mean smooth J %.4f (>= %.2f), mean suppress J %.4f "
                          "(<= %.2f)",
                          smooth, kSmoothMin, suppress, kSuppressMax)};
}

// 4. Every output passes the verifiers.
Outcome AnonymityValidity() {
  std::vector<SparseBinaryMatrix> instances;
  instances.push_back(*GenerateSbm(PlantedSbm(0)));
  instances.push_back(
      *GenerateSbm({.r = 8, .s = 16, .q = 0.5, .p = 0.05, .seed = 1}));
  instances.push_back(
      *GenerateSbm({.r = 4, .s = 32, .q = 1.0, .p = 0.0, .seed = 2}));
  std::mt19937_64 rng(4);
  for (double density : {0.01, 0.1, 0.3, 0.7}) {
    instances.push_back(RandomMatrix(200, 60, density, rng));
  }
  // Mostly empty rows.
  instances.push_back(RandomMatrix(100, 500, 0.001, rng));

  size_t checks = 0, failures = 0;
  for (size_t i = 0; i < instances.size(); ++i) {
    const SparseBinaryMatrix& m = instances[i];
    for (size_t k : {2, 4, 8, 16, 32}) {
      for (SizeStrategy strategy :
           {SizeStrategy::kCloseAndReassign, SizeStrategy::kBoundedMerge}) {
        const FacilityConfig cfg{.seed = i, .strategy = strategy};
        const AnonymizationReport smooth =
            *Anonymize(m, k, AnonymizationMode::kSmooth, cfg);
        const AnonymizationReport suppress =
            *Anonymize(m, k, AnonymizationMode::kSuppress, cfg);
        checks += 3;
        failures += !VerifyKAnonymous(smooth.output, k);
        failures += !*VerifySmoothKAnonymous(smooth.output, m, k);
        failures += !VerifyKAnonymous(suppress.output, k);
      }
    }
  }
  return {failures == 0,
          absl::StrFormat("%d instances, %d verifier checks, %d failures",
                          instances.size(), checks, failures)};
}

// 5. Randomized response rates and the Jaccard upper bound.
Outcome RandomizedResponseStatistics() {
  constexpr double kSigmas = 4.0;
  constexpr double kBoundFraction = 0.95;
  constexpr double kEpsilon = 2.0;
  constexpr double kDelta = 0.05;
  constexpr int kTrials = 200;
  std::mt19937_64 rng(5);
  const SparseBinaryMatrix m = RandomMatrix(500, 500, 0.05, rng);
  const double flip_p = *EdgeDpFlipProbability(kEpsilon);
  const double cells = 500.0 * 500.0;
  const double e = static_cast<double>(m.num_entries());
  const double bound = *JaccardUpperBound(kEpsilon, m.density(), cells, kDelta);

  double kept = 0, created = 0;
  int below = 0;
  for (int t = 0; t < kTrials; ++t) {
    const SparseBinaryMatrix out = *RandomizedResponse(m, flip_p, t);
    const DiffStats s = *ComputeDiffStats(m, out);
    kept += static_cast<double>(s.intersection);
    created += static_cast<double>(s.created);
    below += Jaccard(s) <= bound;
  }
  const double keep_p = 1 - flip_p / 2, create_p = flip_p / 2;
  const double kept_n = kTrials * e, absent_n = kTrials * (cells - e);
  const double keep_rate = kept / kept_n, create_rate = created / absent_n;
  const double keep_z =
      (keep_rate - keep_p) / std::sqrt(keep_p * (1 - keep_p) / kept_n);
  const double create_z =
      (create_rate - create_p) / std::sqrt(create_p * (1 - create_p) / absent_n);
  const double frac = below / static_cast<double>(kTrials);
  return {std::abs(keep_z) <= kSigmas && std::abs(create_z) <= kSigmas &&
              frac >= kBoundFraction,
          absl::StrFormat("survival %.5f (z=%.2f), creation %.5f (z=%.2f), "
                          "J <= bound %.4f in %.1f%% of trials",
                          keep_rate, keep_z, create_rate, create_z, bound,
                          100 * frac)};
}

// 6. Closed-form privacy/utility curve.
Outcome MinEpsilonCurve() {
  const std::optional<double> at_target =
      *MinEpsilonForJaccard(0.5, 1e-4, 1e10, 0.01);
  bool pass = at_target.has_value() && *at_target > 9 && *at_target < 10;
  double prev = std::numeric_limits<double>::infinity();
  std::string curve;
  for (double lambda : {1e-5, 1e-4, 1e-3, 1e-2, 1e-1}) {
    const std::optional<double> eps =
        *MinEpsilonForJaccard(0.5, lambda, 1e10, 0.01);
    pass &= eps.has_value() && *eps < prev;
    prev = eps.value_or(prev);
    curve += absl::StrFormat(" %.3f", eps.value_or(-1));
  }
  return {pass, absl::StrFormat("eps(0.5, 1e-4) = %.4f in (9, 10); curve over "
                                "lambda 1e-5..1e-1:%s",
                                at_target.value_or(-1), curve)};
}

// 7. Suppression output size against the closed-form edge bound.
Outcome SuppressionEdgeBound() {
  constexpr int kRequired = 99;
  const size_t bound = *SbmSuppressionEdgeBound(1024, 0.8, 64);
  int within = 0;
  size_t largest = 0;
  for (uint64_t seed = 0; seed < 100; ++seed) {
    const SparseBinaryMatrix m = *GenerateSbm(PlantedSbm(seed));
    const AnonymizationReport r = *Anonymize(
        m, 64, AnonymizationMode::kSuppress, {.k = 64, .seed = seed});
    within += r.output.num_entries() <= bound;
    largest = std::max(largest, r.output.num_entries());
  }
  return {within >= kRequired,
          absl::StrFormat("%d/100 seeds within bound %d (largest output %d "
                          "entries, min k %.2f)",
                          within, bound, largest, SbmSuppressionMinK(1024, 0.8))};
}

// 8. Pipeline against the exhaustive optimum on tiny instances.
Outcome OracleEquivalence() {
  constexpr double kMinMeanRatio = 0.8;
  constexpr double kSlack = 1e-12;
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<size_t> users(2, 8), features(1, 6);
  std::uniform_real_distribution<double> density(0.15, 0.7);
  double ratio_sum = 0;
  int zero_pipeline = 0, dominance_violations = 0;
  for (int t = 0; t < 200; ++t) {
    const size_t n = users(rng), m_count = features(rng);
    const SparseBinaryMatrix m = RandomMatrix(n, m_count, density(rng), rng);
    const double best = BruteForceSmoothOptimum(m, 2)->best_jaccard;
    const double got =
        Anonymize(m, 2, AnonymizationMode::kSmooth,
                  {.k = 2, .seed = static_cast<uint64_t>(t)})
            ->jaccard;
    dominance_violations += got > best + kSlack;
    zero_pipeline += best > 0 && got == 0;
    ratio_sum += best > 0 ? got / best : 1.0;
  }
  const double mean = ratio_sum / 200;
  return {mean >= kMinMeanRatio && zero_pipeline == 0 &&
              dominance_violations == 0,
          absl::StrFormat("mean ratio %.4f (>= %.2f), zero-while-positive %d, "
                          "dominance violations %d",
                          mean, kMinMeanRatio, zero_pipeline,
                          dominance_violations)};
}

// 9. Count/Jaccard inequalities relating |E xor E'| and J.
Outcome LemmaInvariants() {
  constexpr double kRelTol = 1e-12;
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<size_t> size(1, 12);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int pairs = 0, counterexamples = 0;
  while (pairs < 10000) {
    const SparseBinaryMatrix a =
        RandomMatrix(size(rng), size(rng), 0.05 + 0.9 * unit(rng), rng);
    if (a.num_entries() == 0) continue;
    // Flip each cell with a random rate, then rebuild as a new matrix.
    const double flip = unit(rng) * unit(rng);
    std::bernoulli_distribution coin(flip);
    std::vector<Row> rows(a.n_users());
    for (UserId u = 0; u < a.n_users(); ++u) {
      for (FeatureId f = 0; f < a.n_features(); ++f) {
        if (a.Contains(u, f) != coin(rng)) rows[u].push_back(f);
      }
    }
    const SparseBinaryMatrix b =
        *SparseBinaryMatrix::Create(a.n_features(), std::move(rows));
    ++pairs;

    const DiffStats s = *ComputeDiffStats(a, b);
    const double e = static_cast<double>(a.num_entries());
    const double twice_diff = 2.0 * static_cast<double>(s.symmetric_difference());
    const double j = Jaccard(s);
    // If 2|E xor E'| <= phi'|E| then J >= 1 - phi'/2 (tightest phi').
    const double phi_prime = twice_diff / e;
    bool ok = j >= 1.0 - phi_prime / 2.0 - kRelTol;
    // If J >= 1 - phi then 2|E xor E'| <= 2 phi / (1 - phi) |E| (tightest phi).
    const double phi = 1.0 - j;
    if (phi < 1.0) {
      ok &= twice_diff <= 2.0 * phi / (1.0 - phi) * e * (1 + kRelTol) + kRelTol;
    }
    counterexamples += !ok;
  }
  return {counterexamples == 0,
          absl::StrFormat("%d pairs, %d counterexamples", pairs,
                          counterexamples)};
}

// 10. Sharded pipeline fidelity and worker-count independence.
Outcome ShardingFidelity() {
  constexpr double kMaxGap = 0.10;
  const SparseBinaryMatrix m = *GenerateSbm(PlantedSbm(1));
  const FacilityConfig cfg{.k = 8, .seed = 1};
  const AnonymizationReport plain =
      *Anonymize(m, 8, AnonymizationMode::kSmooth, cfg);
  const ShardConfig one{.chunk_size = 512, .seed = 1, .workers = 1};
  ShardConfig four = one;
  four.workers = 4;
  const AnonymizationReport a =
      *ShardedAnonymize(m, 8, AnonymizationMode::kSmooth, cfg, one);
  const AnonymizationReport b =
      *ShardedAnonymize(m, 8, AnonymizationMode::kSmooth, cfg, four);
  const double gap = std::abs(a.jaccard - plain.jaccard);
  const bool anonymous = VerifyKAnonymous(a.output, 8);
  const bool identical = a.output == b.output;
  return {gap <= kMaxGap && anonymous && identical,
          absl::StrFormat("sharded J %.4f vs unsharded %.4f (gap %.4f <= "
                          "%.2f), k-anonymous %s, 1 vs 4 workers identical %s",
                          a.jaccard, plain.jaccard, gap, kMaxGap,
                          anonymous ? "yes" : "no", identical ? "yes" : "no")};
}

int RunAll() {
  const std::vector<Criterion> criteria = {
      {"AC1", 5, SbmEntryCount},
      {"AC2", 30, GroundTruthSeparation},
      {"AC3", 300, PipelineQualityGap},
      {"AC4", 600, AnonymityValidity},
      {"AC5", 60, RandomizedResponseStatistics},
      {"AC6", 1, MinEpsilonCurve},
      {"AC7", 600, SuppressionEdgeBound},
      {"AC8", 120, OracleEquivalence},
      {"AC9", 30, LemmaInvariants},
      {"AC10", 300, ShardingFidelity},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    const Outcome outcome = c.run();
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    const bool in_budget = seconds < c.budget_seconds;
    const bool pass = outcome.pass && in_budget;
    failures += !pass;
    std::printf("%s %s %s [%.2f s, budget %.0f s%s]\n", c.id.c_str(),
                pass ? "PASS" : "FAIL", outcome.detail.c_str(), seconds,
                c.budget_seconds, in_budget ? "" : ", over budget");
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n",
              static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}

}  // namespace
}  // namespace smoothanon

int main() { return smoothanon::RunAll(); }
