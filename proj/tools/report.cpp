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

#include "report.hpp"

#include <cmath>
#include <cstdio>

namespace sympl::cli {

namespace {

void append_escaped(std::string& out, const std::string& s) {
  out += '"';
  for (const char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\t':
        out += "\\t";
        break;
      case '\r':
        out += "\\r";
        break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

std::string format_g(double v, int digits) {
  if (!std::isfinite(v)) return std::signbit(v) ? "-1e999" : "1e999";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

}  // namespace

std::string format_full(double v) { return format_g(v, 17); }

std::string format_short(double v) { return format_g(v, 12); }

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json Json::object() {
  Json j;
  j.kind_ = Kind::object;
  return j;
}

Json Json::array() {
  Json j;
  j.kind_ = Kind::array;
  return j;
}

Json Json::str(std::string v) {
  Json j;
  j.kind_ = Kind::string;
  j.str_ = std::move(v);
  return j;
}

Json Json::boolean(bool v) {
  Json j;
  j.kind_ = Kind::boolean;
  j.bool_ = v;
  return j;
}

Json Json::integer(std::int64_t v) {
  Json j;
  j.kind_ = Kind::integer;
  j.int_ = v;
  return j;
}

Json Json::uinteger(std::uint64_t v) {
  Json j;
  j.kind_ = Kind::uinteger;
  j.uint_ = v;
  return j;
}

Json Json::number(double v) {
  Json j;
  j.kind_ = Kind::number;
  j.num_ = v;
  return j;
}

Json Json::numbers(const std::vector<double>& v) {
  Json j = array();
  for (const double x : v) j.push(number(x));
  return j;
}

Json Json::matrix(const Mat& a) {
  Json j = array();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Json row = array();
    for (std::size_t k = 0; k < a.cols(); ++k) row.push(number(a(i, k)));
    j.push(std::move(row));
  }
  return j;
}

Json& Json::set(const std::string& key, Json v) {
  for (auto& member : members_) {
    if (member.first == key) {
      member.second = std::move(v);
      return *this;
    }
  }
  members_.emplace_back(key, std::move(v));
  return *this;
}

Json& Json::push(Json v) {
  items_.push_back(std::move(v));
  return *this;
}

void Json::write(std::string& out, int indent, int depth) const {
  const std::string pad(static_cast<std::size_t>(indent) * (depth + 1), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent) * depth, ' ');
  switch (kind_) {
    case Kind::null:
      out += "null";
      break;
    case Kind::string:
      append_escaped(out, str_);
      break;
    case Kind::boolean:
      out += bool_ ? "true" : "false";
      break;
    case Kind::integer: {
      char buf[24];
      std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(int_));
      out += buf;
      break;
    }
    case Kind::uinteger: {
      char buf[24];
      std::snprintf(buf, sizeof buf, "%llu", static_cast<unsigned long long>(uint_));
      out += buf;
      break;
    }
    case Kind::number:
      out += format_full(num_);
      break;
    case Kind::object: {
      if (members_.empty()) {
        out += "{}";
        break;
      }
      out += "{\n";
      for (std::size_t k = 0; k < members_.size(); ++k) {
        out += pad;
        append_escaped(out, members_[k].first);
        out += ": ";
        members_[k].second.write(out, indent, depth + 1);
        if (k + 1 < members_.size()) out += ',';
        out += '\n';
      }
      out += close_pad + "}";
      break;
    }
    case Kind::array: {
      if (items_.empty()) {
        out += "[]";
        break;
      }
      // Arrays of scalars stay on one line; nested arrays get one row each.
      bool nested = false;
      for (const Json& item : items_) {
        if (item.kind_ == Kind::array || item.kind_ == Kind::object) nested = true;
      }
      if (!nested) {
        out += '[';
        for (std::size_t k = 0; k < items_.size(); ++k) {
          items_[k].write(out, indent, depth + 1);
          if (k + 1 < items_.size()) out += ", ";
        }
        out += ']';
        break;
      }
      out += "[\n";
      for (std::size_t k = 0; k < items_.size(); ++k) {
        out += pad;
        items_[k].write(out, indent, depth + 1);
        if (k + 1 < items_.size()) out += ',';
        out += '\n';
      }
      out += close_pad + "]";
      break;
    }
  }
}

std::string Json::dump(int indent) const {
  std::string out;
  write(out, indent, 0);
  return out;
}

}  // namespace sympl::cli
