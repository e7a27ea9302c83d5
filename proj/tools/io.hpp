// Copyright 2026 sympl contributors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SYMPL_TOOLS_IO_HPP
#define SYMPL_TOOLS_IO_HPP

#include <string>

#include "sympl/matrix.hpp"

// Matrix files come in two accepted forms and are sniffed by their first
// non-whitespace byte:
//
//   plain       first line: the even dimension 2n; then 2n rows of 2n
//               whitespace-separated decimal reals
//   structured  a JSON object {"dim": 2n, "rows": [[...], ...]}
//
// Loaded matrices are symmetrized (averaged with their transpose) and the
// largest deviation removed is reported, never silently dropped.

namespace sympl::cli {

struct LoadedMatrix {
  SymMatrix a;
  std::string path;
  std::string format;  // "plain" or "structured"
  std::string digest;  // fnv1a over the raw file bytes
  double max_asymmetry = 0.0;
};

// Reads a whole file; throws ParseError if it cannot be opened.
std::string read_file(const std::string& path);

LoadedMatrix load_matrix(const std::string& path);

// Plain-format text for a square matrix, every entry at full precision.
std::string render_matrix_file(const Mat& a);

void write_matrix_file(const std::string& path, const Mat& a);

}  // namespace sympl::cli

#endif  // SYMPL_TOOLS_IO_HPP
