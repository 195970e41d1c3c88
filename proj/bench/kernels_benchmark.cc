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

// Parallel kernels against their serial references on the planted-partition
// workload (n = 1024, 64 users per block).

#include <vector>

#include "benchmark/benchmark.h"
#include "smoothanon/anonymizer.h"
#include "smoothanon/clustering.h"
#include "smoothanon/dp.h"
#include "smoothanon/reference.h"
#include "smoothanon/sbm.h"

namespace smoothanon {
namespace {

const SbmParams kParams{.r = 16, .s = 64, .q = 0.8, .p = 0.01, .seed = 1};

const SparseBinaryMatrix& Workload() {
  static const SparseBinaryMatrix* m = new SparseBinaryMatrix(*GenerateSbm(kParams));
  return *m;
}

std::vector<uint32_t> BlockAssignment() { return SbmBlocks(kParams); }

void BM_GenerateSbm(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(GenerateSbm(kParams));
}
BENCHMARK(BM_GenerateSbm);

void BM_GenerateSbmReference(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(reference::GenerateSbm(kParams));
}
BENCHMARK(BM_GenerateSbmReference);

void BM_OpeningCosts(benchmark::State& state) {
  const FacilityConfig cfg{.k = 8};
  for (auto _ : state) benchmark::DoNotOptimize(OpeningCosts(Workload(), cfg));
}
BENCHMARK(BM_OpeningCosts);

void BM_OpeningCostsReference(benchmark::State& state) {
  const FacilityConfig cfg{.k = 8};
  for (auto _ : state) {
    benchmark::DoNotOptimize(reference::OpeningCosts(Workload(), cfg));
  }
}
BENCHMARK(BM_OpeningCostsReference);

void BM_SmoothRound(benchmark::State& state) {
  const std::vector<uint32_t> blocks = BlockAssignment();
  for (auto _ : state) benchmark::DoNotOptimize(SmoothRound(Workload(), blocks));
}
BENCHMARK(BM_SmoothRound);

void BM_SmoothRoundReference(benchmark::State& state) {
  const std::vector<uint32_t> blocks = BlockAssignment();
  for (auto _ : state) {
    benchmark::DoNotOptimize(reference::SmoothRound(Workload(), blocks));
  }
}
BENCHMARK(BM_SmoothRoundReference);

void BM_SuppressRound(benchmark::State& state) {
  const std::vector<uint32_t> blocks = BlockAssignment();
  for (auto _ : state) {
    benchmark::DoNotOptimize(SuppressRound(Workload(), blocks));
  }
}
BENCHMARK(BM_SuppressRound);

void BM_SuppressRoundReference(benchmark::State& state) {
  const std::vector<uint32_t> blocks = BlockAssignment();
  for (auto _ : state) {
    benchmark::DoNotOptimize(reference::SuppressRound(Workload(), blocks));
  }
}
BENCHMARK(BM_SuppressRoundReference);

void BM_ClusterForAnonymity(benchmark::State& state) {
  const FacilityConfig cfg{.k = static_cast<size_t>(state.range(0)), .seed = 1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(ClusterForAnonymity(Workload(), cfg));
  }
}
BENCHMARK(BM_ClusterForAnonymity)->Arg(8)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_RandomizedResponse(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(RandomizedResponse(Workload(), 0.01, 3));
  }
}
BENCHMARK(BM_RandomizedResponse);

}  // namespace
}  // namespace smoothanon

BENCHMARK_MAIN();
