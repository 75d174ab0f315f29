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
#include <cstdint>
#include <vector>

namespace relwl {

// Opaque color ids over an index set (nodes, or pairs u * n + v). Only the
// induced partition carries meaning.
using Coloring = std::vector<std::uint32_t>;

// A(x) = A(y) implies B(x) = B(y). Throws ValidationError on size mismatch.
bool refines(const Coloring& a, const Coloring& b);
bool equivalent(const Coloring& a, const Coloring& b);

std::size_t num_classes(const Coloring& c);

// Renumbers colors densely in order of first appearance. Two colorings are
// equivalent iff their canonical forms are equal.
Coloring canonical(const Coloring& c);

// Classes as index lists, ordered by smallest member.
std::vector<std::vector<std::size_t>> classes(const Coloring& c);

}  // namespace relwl
