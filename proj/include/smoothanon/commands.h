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

#ifndef SMOOTHANON_COMMANDS_H_
#define SMOOTHANON_COMMANDS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "smoothanon/anonymizer.h"
#include "smoothanon/clustering.h"
#include "smoothanon/dp.h"
#include "smoothanon/sparse_matrix.h"

namespace smoothanon {

// Process exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 2;
inline constexpr int kExitInputError = 3;

inline constexpr char kSweepCsvHeader[] =
    "dataset,algorithm,param,jaccard_mean,jaccard_std,suppressed_frac,"
    "created_frac,runtime_ms";

// One aggregated result line of a report or sweep CSV.
struct SweepRow {
  std::string dataset;
  std::string algorithm;
  std::string param;
  double jaccard_mean = 0;
  double jaccard_std = 0;
  double suppressed_frac = 0;
  double created_frac = 0;
  double runtime_ms = 0;
};

std::string FormatSweepRow(const SweepRow& row);

// Parses "2,4,8" and inclusive integer ranges such as "2..64" (mixable:
// "1,4..6").
absl::StatusOr<std::vector<size_t>> ParseCountList(std::string_view text);
absl::StatusOr<std::vector<double>> ParseRealList(std::string_view text);

// Default dataset label: the file name without directory and extension.
std::string DatasetLabel(const std::string& path);

struct GenerateSbmOptions {
  size_t r = 16;
  size_t s = 64;
  double q = 0.8;
  double p = 0.01;
  uint64_t seed = 0;
  std::string out_path;
};

struct AnonymizeOptions {
  std::string in_path;
  size_t k = 8;
  AnonymizationMode mode = AnonymizationMode::kSmooth;
  double beta_mult = 2.0;
  SizeStrategy strategy = SizeStrategy::kCloseAndReassign;
  size_t runs = 10;
  // 0 disables sharding.
  size_t chunk_size = 0;
  size_t num_hashes = 8;
  uint64_t seed = 0;
  std::string out_path;
  std::string report_path;
  std::string dataset;
};

struct DpOptions {
  std::string in_path;
  double epsilon = 1.0;
  DpMode mode = DpMode::kEdge;
  double delta = 0.05;
  uint64_t seed = 0;
  std::string out_path;
  std::string report_path;
  std::string dataset;
};

struct SweepOptions {
  std::string in_path;
  std::vector<size_t> k_list;
  std::vector<double> eps_list;
  size_t repeats = 10;
  double beta_mult = 2.0;
  SizeStrategy strategy = SizeStrategy::kCloseAndReassign;
  size_t runs = 10;
  DpMode dp_mode = DpMode::kEdge;
  uint64_t seed = 0;
  std::string csv_out;
  std::string dataset;
};

struct KVsEpsOptions {
  std::string in_path;
  std::vector<size_t> k_list;
  size_t repeats = 3;
  uint64_t seed = 0;
  std::string csv_out;
};

struct OracleOptions {
  std::string in_path;
  size_t k = 2;
  uint64_t seed = 0;
};

int RunGenerateSbm(const GenerateSbmOptions& opts, std::ostream& out,
                   std::ostream& err);
int RunAnonymize(const AnonymizeOptions& opts, std::ostream& out,
                 std::ostream& err);
int RunDp(const DpOptions& opts, std::ostream& out, std::ostream& err);
int RunSweep(const SweepOptions& opts, std::ostream& out, std::ostream& err);
int RunKVsEps(const KVsEpsOptions& opts, std::ostream& out, std::ostream& err);
int RunOracle(const OracleOptions& opts, std::ostream& out, std::ostream& err);

// Sweep rows for one matrix, aggregated over opts.repeats seeded repeats.
// Shared by RunSweep and tests; ignores opts.in_path and opts.csv_out.
absl::StatusOr<std::vector<SweepRow>> SweepMatrix(const SparseBinaryMatrix& m,
                                                  const SweepOptions& opts);

// Mean edge-DP randomized-response Jaccard over `repeats` seeded runs.
absl::StatusOr<double> EmpiricalDpJaccard(const SparseBinaryMatrix& m,
                                          double epsilon, size_t repeats,
                                          uint64_t seed);

struct EpsilonMatch {
  // std::nullopt: no epsilon in [0, 100] reaches the target.
  std::optional<double> epsilon;
  double dp_jaccard = 0;
};

// Bisects epsilon in [0, 100] until EmpiricalDpJaccard is within 0.01 of
// `target`. A target of 1 or more is unreachable: every finite epsilon
// resamples with positive probability.
absl::StatusOr<EpsilonMatch> MatchEdgeDpEpsilon(const SparseBinaryMatrix& m,
                                                double target, size_t repeats,
                                                uint64_t seed);

}  // namespace smoothanon

#endif  // SMOOTHANON_COMMANDS_H_
