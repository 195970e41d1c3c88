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

#ifndef SMOOTHANON_EDGE_LIST_H_
#define SMOOTHANON_EDGE_LIST_H_

#include <istream>
#include <ostream>
#include <string>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "smoothanon/sparse_matrix.h"

namespace smoothanon {

// Edge-list text format:
//
//   n m\n
//   u\tf\n      (one line per entry, 0-based, any order)
//
// Out-of-range ids and duplicate entries are rejected. The writer emits
// entries sorted by user, then feature, so equal matrices produce equal
// bytes.
absl::StatusOr<SparseBinaryMatrix> ParseEdgeList(std::istream& in);
void WriteEdgeList(const SparseBinaryMatrix& m, std::ostream& out);

absl::StatusOr<SparseBinaryMatrix> ReadEdgeListFile(const std::string& path);
absl::Status WriteEdgeListFile(const std::string& path,
                               const SparseBinaryMatrix& m);

}  // namespace smoothanon

#endif  // SMOOTHANON_EDGE_LIST_H_
