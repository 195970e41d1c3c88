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

// Command-line front end: generate-sbm, anonymize, dp, sweep, k-vs-eps,
// oracle. Exit codes: 0 success, 2 verification failure, 3 input error.

#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "smoothanon/commands.h"

namespace {

using smoothanon::AnonymizationMode;
using smoothanon::DpMode;
using smoothanon::SizeStrategy;

const std::map<std::string, AnonymizationMode> kModes = {
    {"smooth", AnonymizationMode::kSmooth},
    {"suppress", AnonymizationMode::kSuppress}};
const std::map<std::string, DpMode> kDpModes = {{"edge", DpMode::kEdge},
                                                {"node", DpMode::kNode}};
const std::map<std::string, SizeStrategy> kStrategies = {
    {"simple", SizeStrategy::kCloseAndReassign},
    {"merge", SizeStrategy::kBoundedMerge}};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Smooth k-anonymity, suppression and randomized response for "
               "sparse binary matrices"};
  app.require_subcommand(1);

  smoothanon::GenerateSbmOptions gen;
  CLI::App* gen_cmd = app.add_subcommand(
      "generate-sbm", "Write a bipartite stochastic block model edge list");
  gen_cmd->add_option("--r", gen.r, "Number of blocks")->capture_default_str();
  gen_cmd->add_option("--s", gen.s, "Block size")->capture_default_str();
  gen_cmd->add_option("--q", gen.q, "In-block edge probability")
      ->capture_default_str();
  gen_cmd->add_option("--p", gen.p, "Cross-block edge probability")
      ->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed)->capture_default_str();
  gen_cmd->add_option("--out", gen.out_path, "Output edge list")->required();

  smoothanon::AnonymizeOptions anon;
  CLI::App* anon_cmd =
      app.add_subcommand("anonymize", "k-anonymize an edge list");
  anon_cmd->add_option("--in", anon.in_path)->required();
  anon_cmd->add_option("--k", anon.k)->capture_default_str();
  anon_cmd->add_option("--mode", anon.mode, "smooth | suppress")
      ->transform(CLI::CheckedTransformer(kModes, CLI::ignore_case));
  anon_cmd->add_option("--beta-mult", anon.beta_mult)->capture_default_str();
  anon_cmd->add_option("--strategy", anon.strategy, "simple | merge")
      ->transform(CLI::CheckedTransformer(kStrategies, CLI::ignore_case));
  anon_cmd->add_option("--runs", anon.runs, "Meyerson runs")
      ->capture_default_str();
  anon_cmd->add_option("--chunk-size", anon.chunk_size,
                       "Shard into minhash-ordered chunks of this size");
  anon_cmd->add_option("--num-hashes", anon.num_hashes)->capture_default_str();
  anon_cmd->add_option("--seed", anon.seed)->capture_default_str();
  anon_cmd->add_option("--out", anon.out_path);
  anon_cmd->add_option("--report", anon.report_path, "CSV report path");
  anon_cmd->add_option("--dataset", anon.dataset, "Dataset label for reports");

  smoothanon::DpOptions dp;
  CLI::App* dp_cmd =
      app.add_subcommand("dp", "Apply randomized response to an edge list");
  dp_cmd->add_option("--in", dp.in_path)->required();
  dp_cmd->add_option("--epsilon", dp.epsilon)->required();
  dp_cmd->add_option("--mode", dp.mode, "edge | node")
      ->transform(CLI::CheckedTransformer(kDpModes, CLI::ignore_case));
  dp_cmd->add_option("--delta", dp.delta, "Failure probability of the bound")
      ->capture_default_str();
  dp_cmd->add_option("--seed", dp.seed)->capture_default_str();
  dp_cmd->add_option("--out", dp.out_path);
  dp_cmd->add_option("--report", dp.report_path, "CSV report path");
  dp_cmd->add_option("--dataset", dp.dataset);

  smoothanon::SweepOptions sweep;
  std::string sweep_k, sweep_eps;
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "Jaccard sweep over k or epsilon");
  sweep_cmd->add_option("--in", sweep.in_path)->required();
  sweep_cmd->add_option("--k-list", sweep_k, "e.g. 2,4,8 or 2..64");
  sweep_cmd->add_option("--eps-list", sweep_eps, "e.g. 1,2,5,10");
  sweep_cmd->add_option("--repeats", sweep.repeats)->capture_default_str();
  sweep_cmd->add_option("--beta-mult", sweep.beta_mult)->capture_default_str();
  sweep_cmd->add_option("--strategy", sweep.strategy, "simple | merge")
      ->transform(CLI::CheckedTransformer(kStrategies, CLI::ignore_case));
  sweep_cmd->add_option("--runs", sweep.runs)->capture_default_str();
  sweep_cmd->add_option("--dp-mode", sweep.dp_mode, "edge | node")
      ->transform(CLI::CheckedTransformer(kDpModes, CLI::ignore_case));
  sweep_cmd->add_option("--seed", sweep.seed)->capture_default_str();
  sweep_cmd->add_option("--csv-out", sweep.csv_out);
  sweep_cmd->add_option("--dataset", sweep.dataset);

  smoothanon::KVsEpsOptions kve;
  std::string kve_k;
  CLI::App* kve_cmd = app.add_subcommand(
      "k-vs-eps", "Edge-DP epsilon matching the smooth Jaccard at each k");
  kve_cmd->add_option("--in", kve.in_path)->required();
  kve_cmd->add_option("--k-list", kve_k)->required();
  kve_cmd->add_option("--repeats", kve.repeats)->capture_default_str();
  kve_cmd->add_option("--seed", kve.seed)->capture_default_str();
  kve_cmd->add_option("--csv-out", kve.csv_out);

  smoothanon::OracleOptions oracle;
  CLI::App* oracle_cmd = app.add_subcommand(
      "oracle", "Compare the pipeline with the exhaustive optimum (n <= 10)");
  oracle_cmd->add_option("--in", oracle.in_path)->required();
  oracle_cmd->add_option("--k", oracle.k)->capture_default_str();
  oracle_cmd->add_option("--seed", oracle.seed)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : smoothanon::kExitInputError;
  }

  auto parse_lists = [&](const std::string& ks, const std::string& eps,
                         std::vector<size_t>& k_out,
                         std::vector<double>& eps_out) -> bool {
    if (!ks.empty()) {
      auto parsed = smoothanon::ParseCountList(ks);
      if (!parsed.ok()) {
        std::cerr << "error: " << parsed.status().message() << '\n';
        return false;
      }
      k_out = *parsed;
    }
    if (!eps.empty()) {
      auto parsed = smoothanon::ParseRealList(eps);
      if (!parsed.ok()) {
        std::cerr << "error: " << parsed.status().message() << '\n';
        return false;
      }
      eps_out = *parsed;
    }
    return true;
  };

  if (*gen_cmd) return smoothanon::RunGenerateSbm(gen, std::cout, std::cerr);
  if (*anon_cmd) return smoothanon::RunAnonymize(anon, std::cout, std::cerr);
  if (*dp_cmd) return smoothanon::RunDp(dp, std::cout, std::cerr);
  if (*sweep_cmd) {
    if (!parse_lists(sweep_k, sweep_eps, sweep.k_list, sweep.eps_list)) {
      return smoothanon::kExitInputError;
    }
    return smoothanon::RunSweep(sweep, std::cout, std::cerr);
  }
  if (*kve_cmd) {
    std::vector<double> unused;
    if (!parse_lists(kve_k, "", kve.k_list, unused)) {
      return smoothanon::kExitInputError;
    }
    return smoothanon::RunKVsEps(kve, std::cout, std::cerr);
  }
  return smoothanon::RunOracle(oracle, std::cout, std::cerr);
}
