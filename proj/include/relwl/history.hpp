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

#pragma once

#include <cstddef>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace relwl {

// f : N -> N, non-decreasing with f(t) <= t. Selects which past
// representation the update at step t reads as "own" state.
class HistoryFunction {
 public:
  enum class Kind { kIdentity, kZero, kTable };

  HistoryFunction() = default;
  static HistoryFunction Identity() { return HistoryFunction(); }
  static HistoryFunction Zero();
  // values[t] = f(t) for t < values.size(); beyond the table f stays at its
  // last value. Throws ValidationError unless f(0) = 0, non-decreasing, and
  // f(t) <= t.
  static HistoryFunction Table(std::vector<std::size_t> values);
  // Draws a valid table of the given length.
  static HistoryFunction RandomTable(std::size_t length, std::mt19937_64& rng);
  // "id", "zero", or whitespace separated integers f(0) f(1) ...
  static HistoryFunction Parse(std::string_view text);

  Kind kind() const { return kind_; }
  const std::vector<std::size_t>& table() const { return table_; }
  std::size_t operator()(std::size_t t) const;
  std::string describe() const;

  bool operator==(const HistoryFunction&) const = default;

 private:
  Kind kind_ = Kind::kIdentity;
  std::vector<std::size_t> table_;
};

}  // namespace relwl
