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

#include "io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "report.hpp"
#include "sympl/errors.hpp"

namespace sympl::cli {

namespace {

constexpr std::size_t kMaxDim = 10000;

void check_dim(long long dim, const std::string& path) {
  if (dim <= 0 || dim % 2 != 0 || dim > static_cast<long long>(kMaxDim)) {
    throw ParseError(path + ": dimension must be a positive even integer, got " +
                     std::to_string(dim));
  }
}

LoadedMatrix from_entries(Mat m, LoadedMatrix partial) {
  partial.a = SymMatrix(std::move(m));
  partial.max_asymmetry = partial.a.max_asymmetry();
  return partial;
}

LoadedMatrix parse_plain(const std::string& bytes, LoadedMatrix partial) {
  std::istringstream in(bytes);
  long long dim = 0;
  if (!(in >> dim)) {
    throw ParseError(partial.path + ": expected the dimension on the first line");
  }
  check_dim(dim, partial.path);
  const std::size_t n = static_cast<std::size_t>(dim);
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!(in >> m(i, j))) {
        throw ParseError(partial.path + ": expected " + std::to_string(n * n) +
                         " entries, failed at row " + std::to_string(i + 1) +
                         " column " + std::to_string(j + 1));
      }
    }
  }
  std::string extra;
  if (in >> extra) {
    throw ParseError(partial.path + ": unexpected trailing content \"" + extra + "\"");
  }
  partial.format = "plain";
  return from_entries(std::move(m), std::move(partial));
}

LoadedMatrix parse_structured(const std::string& bytes, LoadedMatrix partial) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(bytes);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(partial.path + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("dim") || !doc.contains("rows")) {
    throw ParseError(partial.path + ": structured matrix needs fields dim and rows");
  }
  long long dim = 0;
  try {
    dim = doc.at("dim").get<long long>();
  } catch (const nlohmann::json::exception&) {
    throw ParseError(partial.path + ": dim must be an integer");
  }
  check_dim(dim, partial.path);
  const std::size_t n = static_cast<std::size_t>(dim);
  const auto& rows = doc.at("rows");
  if (!rows.is_array() || rows.size() != n) {
    throw ParseError(partial.path + ": rows must be an array of " +
                     std::to_string(n) + " rows");
  }
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = rows[i];
    if (!row.is_array() || row.size() != n) {
      throw ParseError(partial.path + ": row " + std::to_string(i + 1) +
                       " must hold " + std::to_string(n) + " numbers");
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (!row[j].is_number()) {
        throw ParseError(partial.path + ": row " + std::to_string(i + 1) +
                         " column " + std::to_string(j + 1) + " is not a number");
      }
      m(i, j) = row[j].get<double>();
    }
  }
  partial.format = "structured";
  return from_entries(std::move(m), std::move(partial));
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

LoadedMatrix load_matrix(const std::string& path) {
  const std::string bytes = read_file(path);
  LoadedMatrix partial;
  partial.path = path;
  partial.digest = fnv1a_hex(bytes);
  const std::size_t first = bytes.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw ParseError(path + ": file is empty");
  if (bytes[first] == '{') return parse_structured(bytes, std::move(partial));
  return parse_plain(bytes, std::move(partial));
}

std::string render_matrix_file(const Mat& a) {
  std::string out = std::to_string(a.rows());
  out += '\n';
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (j > 0) out += ' ';
      out += format_full(a(i, j));
    }
    out += '\n';
  }
  return out;
}

void write_matrix_file(const std::string& path, const Mat& a) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError(path + ": cannot open file for writing");
  out << render_matrix_file(a);
  if (!out) throw ParseError(path + ": write failed");
}

}  // namespace sympl::cli
