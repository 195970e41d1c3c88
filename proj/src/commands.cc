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

#include "smoothanon/commands.h"

#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <utility>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"
#include "smoothanon/edge_list.h"
#include "smoothanon/random.h"
#include "smoothanon/sbm.h"
#include "smoothanon/shard.h"
#include "smoothanon/oracle.h"

namespace smoothanon {
namespace {

constexpr double kMatchTolerance = 0.01;
constexpr int kMaxBisectionSteps = 60;

struct Moments {
  double mean = 0;
  double stddev = 0;
};

// Mean and sample standard deviation (0 for fewer than two values).
Moments Summarize(const std::vector<double>& values) {
  Moments mo;
  if (values.empty()) return mo;
  for (double v : values) mo.mean += v;
  mo.mean /= static_cast<double>(values.size());
  if (values.size() < 2) return mo;
  double ss = 0;
  for (double v : values) ss += (v - mo.mean) * (v - mo.mean);
  mo.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
  return mo;
}

double Mean(const std::vector<double>& values) { return Summarize(values).mean; }

std::string DpAlgorithmName(DpMode mode) {
  return mode == DpMode::kEdge ? "dp-edge" : "dp-node";
}

std::string FormatEpsilon(double eps) { return absl::StrFormat("%g", eps); }

double Millis(std::chrono::duration<double> d) { return d.count() * 1000.0; }

absl::Status WriteText(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    return absl::PermissionDeniedError(absl::StrFormat("cannot write %s", path));
  }
  out << text;
  out.flush();
  if (!out) return absl::DataLossError(absl::StrFormat("write failed: %s", path));
  return absl::OkStatus();
}

int InputError(std::ostream& err, const absl::Status& status) {
  err << "error: " << status.message() << '\n';
  return kExitInputError;
}

SweepRow RowFromReport(const std::string& dataset,
                       const AnonymizationReport& report) {
  return SweepRow{.dataset = dataset,
                  .algorithm = std::string(ModeName(report.mode)),
                  .param = absl::StrCat(report.k),
                  .jaccard_mean = report.jaccard,
                  .jaccard_std = 0,
                  .suppressed_frac = report.suppressed_frac,
                  .created_frac = report.created_frac,
                  .runtime_ms = Millis(report.wall_time)};
}

}  // namespace

std::string FormatSweepRow(const SweepRow& row) {
  return absl::StrFormat("%s,%s,%s,%.6f,%.6f,%.6f,%.6f,%.3f", row.dataset,
                         row.algorithm, row.param, row.jaccard_mean,
                         row.jaccard_std, row.suppressed_frac, row.created_frac,
                         row.runtime_ms);
}

absl::StatusOr<std::vector<size_t>> ParseCountList(std::string_view text) {
  std::vector<size_t> out;
  auto parse = [](std::string_view s, size_t& v) {
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    return !s.empty() && ec == std::errc() && ptr == end;
  };
  for (absl::string_view piece :
       absl::StrSplit(absl::string_view(text.data(), text.size()), ',')) {
    const std::string_view item(piece.data(), piece.size());
    const size_t dots = item.find("..");
    if (dots == std::string_view::npos) {
      size_t v = 0;
      if (!parse(item, v)) {
        return absl::InvalidArgumentError(
            absl::StrFormat("bad list item \"%s\"", std::string(item)));
      }
      out.push_back(v);
      continue;
    }
    size_t lo = 0, hi = 0;
    if (!parse(item.substr(0, dots), lo) || !parse(item.substr(dots + 2), hi) ||
        lo > hi) {
      return absl::InvalidArgumentError(
          absl::StrFormat("bad range \"%s\"", std::string(item)));
    }
    for (size_t v = lo; v <= hi; ++v) out.push_back(v);
  }
  if (out.empty()) return absl::InvalidArgumentError("empty parameter list");
  return out;
}

absl::StatusOr<std::vector<double>> ParseRealList(std::string_view text) {
  std::vector<double> out;
  for (absl::string_view piece :
       absl::StrSplit(absl::string_view(text.data(), text.size()), ',')) {
    const std::string_view item(piece.data(), piece.size());
    double v = 0;
    const char* end = item.data() + item.size();
    auto [ptr, ec] = std::from_chars(item.data(), end, v);
    if (item.empty() || ec != std::errc() || ptr != end) {
      return absl::InvalidArgumentError(
          absl::StrFormat("bad list item \"%s\"", std::string(item)));
    }
    out.push_back(v);
  }
  if (out.empty()) return absl::InvalidArgumentError("empty parameter list");
  return out;
}

std::string DatasetLabel(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

int RunGenerateSbm(const GenerateSbmOptions& opts, std::ostream& out,
                   std::ostream& err) {
  const SbmParams params{
      .r = opts.r, .s = opts.s, .q = opts.q, .p = opts.p, .seed = opts.seed};
  absl::StatusOr<SparseBinaryMatrix> m = GenerateSbm(params);
  if (!m.ok()) return InputError(err, m.status());
  if (absl::Status st = WriteEdgeListFile(opts.out_path, *m); !st.ok()) {
    return InputError(err, st);
  }
  out << m->num_entries() << '\n';
  return kExitOk;
}

int RunAnonymize(const AnonymizeOptions& opts, std::ostream& out,
                 std::ostream& err) {
  absl::StatusOr<SparseBinaryMatrix> m = ReadEdgeListFile(opts.in_path);
  if (!m.ok()) return InputError(err, m.status());

  const FacilityConfig cfg{.k = opts.k,
                           .beta_mult = opts.beta_mult,
                           .n_runs = opts.runs,
                           .seed = opts.seed,
                           .strategy = opts.strategy};
  absl::StatusOr<AnonymizationReport> report;
  if (opts.chunk_size > 0) {
    const ShardConfig scfg{.num_hashes = opts.num_hashes,
                           .chunk_size = opts.chunk_size,
                           .seed = opts.seed};
    report = ShardedAnonymize(*m, opts.k, opts.mode, cfg, scfg);
  } else {
    report = Anonymize(*m, opts.k, opts.mode, cfg);
  }
  if (!report.ok()) return InputError(err, report.status());

  const std::string dataset =
      opts.dataset.empty() ? DatasetLabel(opts.in_path) : opts.dataset;
  const SweepRow row = RowFromReport(dataset, *report);
  if (!opts.report_path.empty()) {
    absl::Status st = WriteText(
        opts.report_path,
        absl::StrCat(kSweepCsvHeader, "\n", FormatSweepRow(row), "\n"));
    if (!st.ok()) return InputError(err, st);
  }
  out << absl::StrFormat(
      "jaccard=%.6f suppressed=%.6f created=%.6f clusters=%d verified=%s\n",
      report->jaccard, report->suppressed_frac, report->created_frac,
      report->cluster_count, report->verified ? "true" : "false");
  if (!report->verified) {
    err << "error: output failed anonymity verification; not written\n";
    return kExitVerificationFailed;
  }
  if (!opts.out_path.empty()) {
    if (absl::Status st = WriteEdgeListFile(opts.out_path, report->output);
        !st.ok()) {
      return InputError(err, st);
    }
  }
  return kExitOk;
}

int RunDp(const DpOptions& opts, std::ostream& out, std::ostream& err) {
  absl::StatusOr<SparseBinaryMatrix> m = ReadEdgeListFile(opts.in_path);
  if (!m.ok()) return InputError(err, m.status());

  const DpParams params{.epsilon = opts.epsilon, .mode = opts.mode,
                        .seed = opts.seed};
  const auto start = std::chrono::steady_clock::now();
  absl::StatusOr<SparseBinaryMatrix> released = RandomizedResponse(*m, params);
  if (!released.ok()) return InputError(err, released.status());
  const double runtime_ms = Millis(std::chrono::steady_clock::now() - start);

  const DiffStats stats = *ComputeDiffStats(*m, *released);
  EntryFractions fractions;
  if (m->num_entries() > 0) {
    fractions = *SuppressedCreatedFractions(stats, m->num_entries());
  }

  // Node mode is the same mechanism at an effective epsilon of epsilon / m.
  const double effective_eps =
      opts.mode == DpMode::kEdge
          ? opts.epsilon
          : opts.epsilon / static_cast<double>(std::max<size_t>(1, m->n_features()));
  const double cells = static_cast<double>(m->n_users()) *
                       static_cast<double>(m->n_features());
  absl::StatusOr<double> bound =
      JaccardUpperBound(effective_eps, m->density(), cells, opts.delta);

  const SweepRow row{
      .dataset = opts.dataset.empty() ? DatasetLabel(opts.in_path) : opts.dataset,
      .algorithm = DpAlgorithmName(opts.mode),
      .param = FormatEpsilon(opts.epsilon),
      .jaccard_mean = Jaccard(stats),
      .jaccard_std = 0,
      .suppressed_frac = fractions.suppressed,
      .created_frac = fractions.created,
      .runtime_ms = runtime_ms};
  const std::string bound_text =
      bound.ok() ? absl::StrFormat("%.6f", *bound) : std::string();

  if (!opts.report_path.empty()) {
    absl::Status st = WriteText(
        opts.report_path,
        absl::StrCat(kSweepCsvHeader, ",jaccard_bound\n", FormatSweepRow(row),
                     ",", bound_text, "\n"));
    if (!st.ok()) return InputError(err, st);
  }
  if (!opts.out_path.empty()) {
    if (absl::Status st = WriteEdgeListFile(opts.out_path, *released);
        !st.ok()) {
      return InputError(err, st);
    }
  }
  out << absl::StrFormat("jaccard=%.6f bound=%s\n", row.jaccard_mean,
                         bound.ok() ? bound_text : "n/a");
  return kExitOk;
}

absl::StatusOr<std::vector<SweepRow>> SweepMatrix(const SparseBinaryMatrix& m,
                                                  const SweepOptions& opts) {
  if (opts.k_list.empty() && opts.eps_list.empty()) {
    return absl::InvalidArgumentError("empty parameter list");
  }
  if (opts.repeats < 1) return absl::InvalidArgumentError("repeats must be >= 1");

  std::vector<SweepRow> rows;
  for (AnonymizationMode mode :
       {AnonymizationMode::kSmooth, AnonymizationMode::kSuppress}) {
    for (size_t k : opts.k_list) {
      std::vector<double> jac, sup, cre, ms;
      for (size_t rep = 0; rep < opts.repeats; ++rep) {
        const FacilityConfig cfg{.k = k,
                                 .beta_mult = opts.beta_mult,
                                 .n_runs = opts.runs,
                                 .seed = DeriveSeed(opts.seed, {rep}),
                                 .strategy = opts.strategy};
        absl::StatusOr<AnonymizationReport> r = Anonymize(m, k, mode, cfg);
        if (!r.ok()) return r.status();
        if (!r->verified) {
          return absl::InternalError(absl::StrFormat(
              "verification failed for k=%d mode=%s", k, std::string(ModeName(mode))));
        }
        jac.push_back(r->jaccard);
        sup.push_back(r->suppressed_frac);
        cre.push_back(r->created_frac);
        ms.push_back(Millis(r->wall_time));
      }
      const Moments j = Summarize(jac);
      rows.push_back({.dataset = opts.dataset,
                      .algorithm = std::string(ModeName(mode)),
                      .param = absl::StrCat(k),
                      .jaccard_mean = j.mean,
                      .jaccard_std = j.stddev,
                      .suppressed_frac = Mean(sup),
                      .created_frac = Mean(cre),
                      .runtime_ms = Mean(ms)});
    }
  }

  for (double eps : opts.eps_list) {
    std::vector<double> jac, sup, cre, ms;
    for (size_t rep = 0; rep < opts.repeats; ++rep) {
      const DpParams params{.epsilon = eps, .mode = opts.dp_mode,
                            .seed = DeriveSeed(opts.seed, {rep})};
      const auto start = std::chrono::steady_clock::now();
      absl::StatusOr<SparseBinaryMatrix> out = RandomizedResponse(m, params);
      if (!out.ok()) return out.status();
      ms.push_back(Millis(std::chrono::steady_clock::now() - start));
      const DiffStats stats = *ComputeDiffStats(m, *out);
      jac.push_back(Jaccard(stats));
      if (m.num_entries() > 0) {
        const EntryFractions fr = *SuppressedCreatedFractions(stats, m.num_entries());
        sup.push_back(fr.suppressed);
        cre.push_back(fr.created);
      }
    }
    const Moments j = Summarize(jac);
    rows.push_back({.dataset = opts.dataset,
                    .algorithm = DpAlgorithmName(opts.dp_mode),
                    .param = FormatEpsilon(eps),
                    .jaccard_mean = j.mean,
                    .jaccard_std = j.stddev,
                    .suppressed_frac = Mean(sup),
                    .created_frac = Mean(cre),
                    .runtime_ms = Mean(ms)});
  }
  return rows;
}

int RunSweep(const SweepOptions& opts, std::ostream& out, std::ostream& err) {
  absl::StatusOr<SparseBinaryMatrix> m = ReadEdgeListFile(opts.in_path);
  if (!m.ok()) return InputError(err, m.status());
  SweepOptions resolved = opts;
  if (resolved.dataset.empty()) resolved.dataset = DatasetLabel(opts.in_path);

  absl::StatusOr<std::vector<SweepRow>> rows = SweepMatrix(*m, resolved);
  if (!rows.ok()) {
    err << "error: " << rows.status().message() << '\n';
    return rows.status().code() == absl::StatusCode::kInternal
               ? kExitVerificationFailed
               : kExitInputError;
  }
  std::string csv = absl::StrCat(kSweepCsvHeader, "\n");
  for (const SweepRow& row : *rows) absl::StrAppend(&csv, FormatSweepRow(row), "\n");
  if (opts.csv_out.empty()) {
    out << csv;
  } else if (absl::Status st = WriteText(opts.csv_out, csv); !st.ok()) {
    return InputError(err, st);
  }
  return kExitOk;
}

absl::StatusOr<double> EmpiricalDpJaccard(const SparseBinaryMatrix& m,
                                          double epsilon, size_t repeats,
                                          uint64_t seed) {
  absl::StatusOr<double> flip_p = EdgeDpFlipProbability(epsilon);
  if (!flip_p.ok()) return flip_p.status();
  double total = 0;
  for (size_t rep = 0; rep < repeats; ++rep) {
    absl::StatusOr<SparseBinaryMatrix> out =
        RandomizedResponse(m, *flip_p, DeriveSeed(seed, {rep}));
    if (!out.ok()) return out.status();
    total += Jaccard(*ComputeDiffStats(m, *out));
  }
  return total / static_cast<double>(repeats);
}

absl::StatusOr<EpsilonMatch> MatchEdgeDpEpsilon(const SparseBinaryMatrix& m,
                                                double target, size_t repeats,
                                                uint64_t seed) {
  if (repeats < 1) return absl::InvalidArgumentError("repeats must be >= 1");
  auto eval = [&](double eps) { return EmpiricalDpJaccard(m, eps, repeats, seed); };
  if (target >= 1.0) {
    // Unreachable: report what the top of the search range achieves.
    absl::StatusOr<double> at_max = eval(kMaxSearchEpsilon);
    if (!at_max.ok()) return at_max.status();
    return EpsilonMatch{std::nullopt, *at_max};
  }
  absl::StatusOr<double> at_lo = eval(0.0);
  if (!at_lo.ok()) return at_lo.status();
  if (*at_lo >= target - kMatchTolerance) return EpsilonMatch{0.0, *at_lo};
  absl::StatusOr<double> at_hi = eval(kMaxSearchEpsilon);
  if (!at_hi.ok()) return at_hi.status();
  if (*at_hi < target - kMatchTolerance) return EpsilonMatch{std::nullopt, *at_hi};

  double lo = 0.0, hi = kMaxSearchEpsilon, hi_jaccard = *at_hi;
  for (int step = 0; step < kMaxBisectionSteps; ++step) {
    const double mid = 0.5 * (lo + hi);
    absl::StatusOr<double> j = eval(mid);
    if (!j.ok()) return j.status();
    if (std::abs(*j - target) <= kMatchTolerance) return EpsilonMatch{mid, *j};
    if (*j < target) {
      lo = mid;
    } else {
      hi = mid;
      hi_jaccard = *j;
    }
  }
  return EpsilonMatch{hi, hi_jaccard};
}

int RunKVsEps(const KVsEpsOptions& opts, std::ostream& out, std::ostream& err) {
  absl::StatusOr<SparseBinaryMatrix> m = ReadEdgeListFile(opts.in_path);
  if (!m.ok()) return InputError(err, m.status());
  if (opts.k_list.empty()) {
    return InputError(err, absl::InvalidArgumentError("empty parameter list"));
  }

  std::string csv = "k,smooth_jaccard,epsilon,dp_jaccard\n";
  for (size_t k : opts.k_list) {
    double smooth = 0;
    for (size_t rep = 0; rep < opts.repeats; ++rep) {
      const FacilityConfig cfg{.k = k, .seed = DeriveSeed(opts.seed, {rep})};
      absl::StatusOr<AnonymizationReport> r =
          Anonymize(*m, k, AnonymizationMode::kSmooth, cfg);
      if (!r.ok()) return InputError(err, r.status());
      smooth += r->jaccard;
    }
    smooth /= static_cast<double>(opts.repeats);
    absl::StatusOr<EpsilonMatch> match =
        MatchEdgeDpEpsilon(*m, smooth, opts.repeats, opts.seed);
    if (!match.ok()) return InputError(err, match.status());
    absl::StrAppend(
        &csv,
        absl::StrFormat("%d,%.6f,%s,%.6f\n", k, smooth,
                        match->epsilon ? absl::StrFormat("%.4f", *match->epsilon)
                                       : std::string(">=100"),
                        match->dp_jaccard));
  }
  if (opts.csv_out.empty()) {
    out << csv;
  } else if (absl::Status st = WriteText(opts.csv_out, csv); !st.ok()) {
    return InputError(err, st);
  }
  return kExitOk;
}

int RunOracle(const OracleOptions& opts, std::ostream& out, std::ostream& err) {
  absl::StatusOr<SparseBinaryMatrix> m = ReadEdgeListFile(opts.in_path);
  if (!m.ok()) return InputError(err, m.status());
  absl::StatusOr<OracleResult> best = BruteForceSmoothOptimum(*m, opts.k);
  if (!best.ok()) return InputError(err, best.status());
  const FacilityConfig cfg{.k = opts.k, .seed = opts.seed};
  absl::StatusOr<AnonymizationReport> report =
      Anonymize(*m, opts.k, AnonymizationMode::kSmooth, cfg);
  if (!report.ok()) return InputError(err, report.status());

  const double ratio = best->best_jaccard > 0
                           ? report->jaccard / best->best_jaccard
                           : 1.0;
  out << absl::StrFormat(
      "oracle_jaccard=%.6f pipeline_jaccard=%.6f ratio=%.6f partitions=%d\n",
      best->best_jaccard, report->jaccard, ratio, best->enumerated);
  return report->verified ? kExitOk : kExitVerificationFailed;
}

}  // namespace smoothanon
