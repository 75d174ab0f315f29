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
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "relwl/kg.hpp"
#include "relwl/wl.hpp"

namespace relwl {

struct Claim {
  TestId test;
  std::pair<std::string, std::string> pair_a;
  std::pair<std::string, std::string> pair_b;
  Distinction expected;
};

// A counterexample graph with its diagonal pair coloring and expected verdicts.
struct Fixture {
  std::string name;
  KnowledgeGraph graph;
  std::vector<Claim> claims;
};

const std::vector<std::string>& fixture_names();
// Throws LookupError for names other than ga, gb, gc, gd.
Fixture fixture(std::string_view name);

struct ClaimResult {
  Claim claim;
  Distinction observed;
  bool passed() const { return observed == claim.expected; }
};

// Runs every claim to stabilization.
std::vector<ClaimResult> check_claims(const Fixture& f);

std::string describe(const Claim& c);
std::string describe(const Distinction& d);

enum class RandomPairColoring {
  kNone,
  kDiagonal,
  kColoredDiagonal,
  // Random labels, drawn separately for diagonal and off-diagonal pairs so
  // target node distinguishability holds.
  kRandomDistinguishing,
};

struct RandomGraphConfig {
  std::size_t n_min = 1;
  std::size_t n_max = 6;
  std::size_t r_min = 1;
  std::size_t r_max = 3;
  double density = 0.3;
  std::size_t node_colors = 1;  // 1 = uniform
  RandomPairColoring pair_coloring = RandomPairColoring::kNone;
  std::size_t pair_colors = 2;  // per side, kRandomDistinguishing only
};

// Nodes n0.., relations r0.., colors c0..; each of the n * n * |R| possible
// facts is included independently with probability `density`.
KnowledgeGraph random_kg(std::uint64_t seed, const RandomGraphConfig& config);
KnowledgeGraph random_kg(std::uint64_t seed, std::size_t n_max, std::size_t r_max,
                         double density);

}  // namespace relwl
