// Copyright 2026 The relwl Authors
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

#include "relwl/history.hpp"

#include <sstream>

#include "relwl/error.hpp"

namespace relwl {

HistoryFunction HistoryFunction::Zero() {
  HistoryFunction f;
  f.kind_ = Kind::kZero;
  return f;
}

HistoryFunction HistoryFunction::Table(std::vector<std::size_t> values) {
  for (std::size_t t = 0; t < values.size(); ++t) {
    if (values[t] > t) {
      throw ValidationError("history table violates f(t) <= t at t=" + std::to_string(t));
    }
    if (t > 0 && values[t] < values[t - 1]) {
      throw ValidationError("history table is not non-decreasing at t=" + std::to_string(t));
    }
  }
  HistoryFunction f;
  f.kind_ = Kind::kTable;
  f.table_ = std::move(values);
  return f;
}

HistoryFunction HistoryFunction::RandomTable(std::size_t length, std::mt19937_64& rng) {
  std::vector<std::size_t> values;
  values.reserve(length);
  for (std::size_t t = 0; t < length; ++t) {
    std::size_t lo = t == 0 ? 0 : values.back();
    values.push_back(std::uniform_int_distribution<std::size_t>(lo, t)(rng));
  }
  return Table(std::move(values));
}

HistoryFunction HistoryFunction::Parse(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  const auto last = text.find_last_not_of(" \t\r\n");
  std::string s = first == std::string_view::npos ? std::string()
                                                  : std::string(text.substr(first, last - first + 1));
  if (s == "id" || s == "identity") return Identity();
  if (s == "zero" || s == "0") return Zero();
  std::istringstream in(s);
  std::vector<std::size_t> values;
  std::string token;
  while (in >> token) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size() || token.front() == '-') {
      throw ValidationError("history table entry is not a natural number: " + token);
    }
    values.push_back(static_cast<std::size_t>(v));
  }
  if (values.empty()) throw ValidationError("empty history table");
  return Table(std::move(values));
}

std::size_t HistoryFunction::operator()(std::size_t t) const {
  switch (kind_) {
    case Kind::kIdentity:
      return t;
    case Kind::kZero:
      return 0;
    case Kind::kTable:
      if (table_.empty()) return 0;
      return t < table_.size() ? table_[t] : table_.back();
  }
  return t;
}

std::string HistoryFunction::describe() const {
  switch (kind_) {
    case Kind::kIdentity:
      return "id";
    case Kind::kZero:
      return "zero";
    case Kind::kTable: {
      std::string out;
      for (std::size_t i = 0; i < table_.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(table_[i]);
      }
      return out;
    }
  }
  return "id";
}

}  // namespace relwl
