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

#ifndef SYMPL_TOOLS_REPORT_HPP
#define SYMPL_TOOLS_REPORT_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sympl/matrix.hpp"

// Report documents are JSON with insertion-ordered keys. Doubles are
// emitted with 17 significant digits, so re-parsing a report recovers the
// exact bit pattern of every value and two runs with the same seed produce
// byte-identical documents.

namespace sympl::cli {

class Json {
 public:
  static Json object();
  static Json array();
  static Json str(std::string v);
  static Json boolean(bool v);
  static Json integer(std::int64_t v);
  static Json uinteger(std::uint64_t v);
  static Json number(double v);
  static Json numbers(const std::vector<double>& v);
  static Json matrix(const Mat& a);

  // Adds or replaces a key of an object.
  Json& set(const std::string& key, Json v);
  // Appends to an array.
  Json& push(Json v);

  std::string dump(int indent = 2) const;

 private:
  enum class Kind { null, object, array, string, boolean, integer, uinteger, number };

  Json() = default;
  void write(std::string& out, int indent, int depth) const;

  Kind kind_ = Kind::null;
  std::string str_;
  bool bool_ = false;
  std::int64_t int_ = 0;
  std::uint64_t uint_ = 0;
  double num_ = 0.0;
  std::vector<std::pair<std::string, Json>> members_;
  std::vector<Json> items_;
};

// Shortest text that round-trips the double exactly (17 significant digits).
std::string format_full(double v);

// 12 significant digits for human-facing summary lines.
std::string format_short(double v);

// 64-bit FNV-1a of the bytes, as 16 lowercase hex digits.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace sympl::cli

#endif  // SYMPL_TOOLS_REPORT_HPP
