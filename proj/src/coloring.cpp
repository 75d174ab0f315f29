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

#include "relwl/coloring.hpp"

#include <unordered_map>

#include "relwl/error.hpp"

namespace relwl {

bool refines(const Coloring& a, const Coloring& b) {
  if (a.size() != b.size()) throw ValidationError("colorings over different index sets");
  std::unordered_map<std::uint32_t, std::uint32_t> image;
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto [it, inserted] = image.emplace(a[i], b[i]);
    if (!inserted && it->second != b[i]) return false;
  }
  return true;
}

bool equivalent(const Coloring& a, const Coloring& b) { return refines(a, b) && refines(b, a); }

std::size_t num_classes(const Coloring& c) {
  std::unordered_map<std::uint32_t, bool> seen;
  for (auto x : c) seen.emplace(x, true);
  return seen.size();
}

Coloring canonical(const Coloring& c) {
  std::unordered_map<std::uint32_t, std::uint32_t> ids;
  Coloring out;
  out.reserve(c.size());
  for (auto x : c) {
    auto [it, inserted] = ids.emplace(x, static_cast<std::uint32_t>(ids.size()));
    out.push_back(it->second);
  }
  return out;
}

std::vector<std::vector<std::size_t>> classes(const Coloring& c) {
  Coloring dense = canonical(c);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (dense[i] == out.size()) out.emplace_back();
    out[dense[i]].push_back(i);
  }
  return out;
}

}  // namespace relwl
