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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "relwl/coloring.hpp"
#include "relwl/history.hpp"
#include "relwl/kg.hpp"

namespace relwl {

enum class TestId { kRwl1, kRwl2, kRawl2, kRwl2Plus, kRawl2Plus };

std::string_view to_string(TestId id);
TestId parse_test_id(std::string_view name);  // "rwl1", "rwl2", "rawl2", "rwl2+", "rawl2+"
std::size_t arity(TestId id);

// Either a fixed number of refinement steps, or run until the partition stops
// changing.
struct Horizon {
  std::optional<std::size_t> iterations;

  static Horizon Iterations(std::size_t t) { return Horizon{t}; }
  static Horizon Stabilize() { return Horizon{}; }
};

struct RunOptions {
  // Arity-2 tests normally require a target-node-distinguishing pair coloring.
  bool waive_tnd = false;
  // Arity-2 tests materialize |V|^2 pairs.
  std::size_t max_pair_nodes = 64;
};

struct WLTrace {
  TestId test = TestId::kRwl1;
  std::size_t num_nodes = 0;
  std::vector<std::string> node_names;
  // colorings[t] over nodes (arity 1) or pairs u * n + v (arity 2).
  std::vector<Coloring> colorings;
  // First t >= 1 with colorings[t] equivalent to colorings[t - 1].
  std::optional<std::size_t> stabilized_at;

  std::size_t arity() const { return relwl::arity(test); }
  std::size_t iterations() const { return colorings.empty() ? 0 : colorings.size() - 1; }
  std::size_t index(NodeId u, NodeId v) const { return u * num_nodes + v; }
  // Coloring at iteration t; past the recorded horizon this is the last
  // coloring if the trace stabilized, else PreconditionError.
  const Coloring& at(std::size_t t) const;
};

WLTrace run_test(TestId test, const KnowledgeGraph& g,
                 const HistoryFunction& f = HistoryFunction::Identity(),
                 Horizon horizon = Horizon::Stabilize(), const RunOptions& options = {});

struct Distinction {
  enum class Verdict { kAt, kNever, kUnknownBeyondHorizon };
  Verdict verdict = Verdict::kNever;
  std::size_t iteration = 0;  // meaningful for kAt

  static Distinction At(std::size_t t) { return {Verdict::kAt, t}; }
  static Distinction Never() { return {Verdict::kNever, 0}; }
  static Distinction Unknown() { return {Verdict::kUnknownBeyondHorizon, 0}; }
  bool operator==(const Distinction&) const = default;
};

// Least t with colorings[t](x) != colorings[t](y). "never" is only reported
// for stabilized traces (or x == y).
Distinction distinguishes(const WLTrace& trace, std::size_t x, std::size_t y);

// First t where colorings[t + 1] does not refine colorings[t], if any.
std::optional<std::size_t> monotonicity_violation(const WLTrace& trace);

// {test, iterations, partitions: [[class lists]], stabilized_at}. Arity-1
// classes list node names; arity-2 classes list [u, v] name pairs.
nlohmann::json trace_to_json(const WLTrace& trace);

}  // namespace relwl
