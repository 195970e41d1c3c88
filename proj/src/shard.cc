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

#include "smoothanon/shard.h"

#include <algorithm>
#include <chrono>
#include <limits>
#include <numeric>
#include <utility>

#include <omp.h>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"
#include "smoothanon/random.h"

namespace smoothanon {

MinhashSignature ComputeMinhashSignature(RowView row, const ShardConfig& cfg) {
  MinhashSignature sig(cfg.num_hashes, std::numeric_limits<uint64_t>::max());
  for (size_t j = 0; j < cfg.num_hashes; ++j) {
    for (FeatureId f : row) {
      sig[j] = std::min(sig[j], DeriveSeed(cfg.seed, {j, f}));
    }
  }
  return sig;
}

std::vector<UserId> ShardOrder(const SparseBinaryMatrix& m,
                               const ShardConfig& cfg) {
  const int64_t n = static_cast<int64_t>(m.n_users());
  std::vector<MinhashSignature> sigs(n);
#pragma omp parallel for schedule(dynamic, 64)
  for (int64_t u = 0; u < n; ++u) {
    sigs[u] = ComputeMinhashSignature(m.row(static_cast<UserId>(u)), cfg);
  }
  std::vector<UserId> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](UserId a, UserId b) { return sigs[a] < sigs[b]; });
  return order;
}

std::vector<std::vector<UserId>> SplitIntoChunks(
    const std::vector<UserId>& order, size_t chunk_size, size_t k) {
  std::vector<std::vector<UserId>> chunks;
  for (size_t start = 0; start < order.size(); start += chunk_size) {
    const size_t end = std::min(order.size(), start + chunk_size);
    std::vector<UserId> chunk(order.begin() + start, order.begin() + end);
    if (chunk.size() < k && !chunks.empty()) {
      chunks.back().insert(chunks.back().end(), chunk.begin(), chunk.end());
    } else {
      chunks.push_back(std::move(chunk));
    }
  }
  return chunks;
}

uint64_t ChunkSeed(uint64_t seed, size_t chunk) {
  return DeriveSeed(seed, {chunk});
}

absl::StatusOr<AnonymizationReport> ShardedAnonymize(
    const SparseBinaryMatrix& m, size_t k, AnonymizationMode mode,
    const FacilityConfig& fcfg, const ShardConfig& scfg) {
  const auto start = std::chrono::steady_clock::now();
  if (scfg.num_hashes < 1) {
    return absl::InvalidArgumentError("num_hashes must be at least 1");
  }
  if (scfg.chunk_size < k) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "chunk_size %d is smaller than k=%d", scfg.chunk_size, k));
  }
  if (m.n_users() < k) {
    return absl::FailedPreconditionError(absl::StrFormat(
        "cannot anonymize: %d users is fewer than k=%d", m.n_users(), k));
  }

  std::vector<std::vector<UserId>> chunks =
      SplitIntoChunks(ShardOrder(m, scfg), scfg.chunk_size, k);
  for (std::vector<UserId>& chunk : chunks) std::sort(chunk.begin(), chunk.end());

  const int64_t num_chunks = static_cast<int64_t>(chunks.size());
  std::vector<absl::StatusOr<AnonymizationReport>> parts(
      num_chunks, absl::UnknownError("not run"));
  const int workers = scfg.workers > 0 ? scfg.workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
  for (int64_t c = 0; c < num_chunks; ++c) {
    FacilityConfig cfg = fcfg;
    cfg.seed = ChunkSeed(fcfg.seed, static_cast<size_t>(c));
    parts[c] = Anonymize(m.SelectRows(chunks[c]), k, mode, cfg);
  }

  std::vector<Row> rows(m.n_users());
  size_t clusters = 0;
  for (int64_t c = 0; c < num_chunks; ++c) {
    if (!parts[c].ok()) return parts[c].status();
    clusters += parts[c]->cluster_count;
    const std::vector<UserId>& chunk = chunks[c];
    for (size_t i = 0; i < chunk.size(); ++i) {
      const RowView r = parts[c]->output.row(static_cast<UserId>(i));
      rows[chunk[i]].assign(r.begin(), r.end());
    }
  }
  return MakeReport(m,
                    SparseBinaryMatrix::FromValidRows(m.n_features(),
                                                      std::move(rows)),
                    k, mode, clusters,
                    std::chrono::steady_clock::now() - start);
}

}  // namespace smoothanon
