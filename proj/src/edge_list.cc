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

#include "smoothanon/edge_list.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <string_view>
#include <vector>

#include "absl/strings/str_format.h"

namespace smoothanon {
namespace {

bool ParseCount(std::string_view text, size_t& out) {
  if (text.empty()) return false;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc() && ptr == end;
}

// Splits "a<sep>b" into its two fields.
bool SplitPair(std::string_view line, char sep, size_t& a, size_t& b) {
  const size_t pos = line.find(sep);
  if (pos == std::string_view::npos) return false;
  return ParseCount(line.substr(0, pos), a) &&
         ParseCount(line.substr(pos + 1), b);
}

}  // namespace

absl::StatusOr<SparseBinaryMatrix> ParseEdgeList(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    return absl::InvalidArgumentError("missing header line \"n m\"");
  }
  size_t n = 0, m = 0;
  if (!SplitPair(line, ' ', n, m)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("malformed header \"%s\", expected \"n m\"", line));
  }

  std::vector<Row> rows(n);
  size_t line_no = 1;
  bool saw_blank = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) {
      saw_blank = true;
      continue;
    }
    if (saw_blank) {
      return absl::InvalidArgumentError(
          absl::StrFormat("line %d: entry after blank line", line_no));
    }
    size_t u = 0, f = 0;
    if (!SplitPair(line, '\t', u, f)) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "line %d: malformed entry \"%s\", expected \"u<TAB>f\"", line_no,
          line));
    }
    if (u >= n || f >= m) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "line %d: entry (%d, %d) outside %dx%d", line_no, u, f, n, m));
    }
    rows[u].push_back(static_cast<FeatureId>(f));
  }

  for (size_t u = 0; u < n; ++u) {
    Row& r = rows[u];
    std::sort(r.begin(), r.end());
    auto dup = std::adjacent_find(r.begin(), r.end());
    if (dup != r.end()) {
      return absl::InvalidArgumentError(
          absl::StrFormat("duplicate entry (%d, %d)", u, *dup));
    }
  }
  return SparseBinaryMatrix::Create(m, std::move(rows));
}

void WriteEdgeList(const SparseBinaryMatrix& m, std::ostream& out) {
  out << m.n_users() << ' ' << m.n_features() << '\n';
  for (UserId u = 0; u < m.n_users(); ++u) {
    for (FeatureId f : m.row(u)) out << u << '\t' << f << '\n';
  }
}

absl::StatusOr<SparseBinaryMatrix> ReadEdgeListFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    return absl::NotFoundError(absl::StrFormat("cannot open %s", path));
  }
  absl::StatusOr<SparseBinaryMatrix> m = ParseEdgeList(in);
  if (!m.ok()) {
    return absl::InvalidArgumentError(
        absl::StrFormat("%s: %s", path, m.status().message()));
  }
  return m;
}

absl::Status WriteEdgeListFile(const std::string& path,
                               const SparseBinaryMatrix& m) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    return absl::PermissionDeniedError(
        absl::StrFormat("cannot write %s", path));
  }
  WriteEdgeList(m, out);
  out.flush();
  if (!out) return absl::DataLossError(absl::StrFormat("write failed: %s", path));
  return absl::OkStatus();
}

}  // namespace smoothanon
