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

#include "relwl/wl.hpp"

#include <algorithm>
#include <cstdint>
#include <unordered_map>

#include "relwl/error.hpp"

namespace relwl {
namespace {

using Signature = std::vector<std::uint64_t>;

struct SignatureHash {
  std::size_t operator()(const Signature& s) const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::uint64_t x : s) {
      h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

// tau: injective on signatures within one iteration; fresh dense ids in order
// of first appearance over the index set.
class Interner {
 public:
  std::uint32_t operator()(Signature sig) {
    auto [it, inserted] = ids_.emplace(std::move(sig), static_cast<std::uint32_t>(ids_.size()));
    return it->second;
  }

 private:
  std::unordered_map<Signature, std::uint32_t, SignatureHash> ids_;
};

std::uint64_t tagged(std::uint32_t color, RelationId r) {
  return (static_cast<std::uint64_t>(color) << 32) | r;
}

// Appends the sorted multiset {(color(neighbor), r)} with a length prefix so
// that consecutive multisets cannot run into each other.
template <typename ColorOf>
void append_multiset(Signature& sig, std::span<const InEdge> in, ColorOf&& color_of) {
  const std::size_t start = sig.size();
  sig.push_back(in.size());
  for (const InEdge& e : in) sig.push_back(tagged(color_of(e.source), e.relation));
  std::sort(sig.begin() + static_cast<std::ptrdiff_t>(start) + 1, sig.end());
}

Coloring initial_coloring(TestId test, const KnowledgeGraph& g) {
  if (arity(test) == 1) return canonical(g.node_coloring().ids);
  return canonical(g.pair_coloring()->colors());
}

Coloring step(TestId test, const KnowledgeGraph& g, const Coloring& own, const Coloring& current) {
  const std::size_t n = g.num_nodes();
  Interner tau;
  Coloring next(current.size());
  Signature sig;
  if (test == TestId::kRwl1) {
    for (NodeId v = 0; v < n; ++v) {
      sig.clear();
      sig.push_back(own[v]);
      append_multiset(sig, g.incoming(v), [&](NodeId w) { return current[w]; });
      next[v] = tau(sig);
    }
    return next;
  }
  const bool symmetric = (test == TestId::kRwl2 || test == TestId::kRwl2Plus);
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = 0; v < n; ++v) {
      sig.clear();
      sig.push_back(own[u * n + v]);
      if (symmetric) {
        append_multiset(sig, g.incoming(u), [&](NodeId w) { return current[w * n + v]; });
      }
      append_multiset(sig, g.incoming(v), [&](NodeId w) { return current[u * n + w]; });
      next[u * n + v] = tau(sig);
    }
  }
  return next;
}

}  // namespace

std::string_view to_string(TestId id) {
  switch (id) {
    case TestId::kRwl1:
      return "rwl1";
    case TestId::kRwl2:
      return "rwl2";
    case TestId::kRawl2:
      return "rawl2";
    case TestId::kRwl2Plus:
      return "rwl2+";
    case TestId::kRawl2Plus:
      return "rawl2+";
  }
  return "rwl1";
}

TestId parse_test_id(std::string_view name) {
  for (TestId id : {TestId::kRwl1, TestId::kRwl2, TestId::kRawl2, TestId::kRwl2Plus,
                    TestId::kRawl2Plus}) {
    if (to_string(id) == name) return id;
  }
  throw ValidationError("unknown test: " + std::string(name));
}

std::size_t arity(TestId id) { return id == TestId::kRwl1 ? 1 : 2; }

const Coloring& WLTrace::at(std::size_t t) const {
  if (t < colorings.size()) return colorings[t];
  if (stabilized_at && !colorings.empty()) return colorings.back();
  throw PreconditionError("iteration " + std::to_string(t) + " is beyond the recorded horizon");
}

WLTrace run_test(TestId test, const KnowledgeGraph& input, const HistoryFunction& f,
                 Horizon horizon, const RunOptions& options) {
  const bool augmented = (test == TestId::kRwl2Plus || test == TestId::kRawl2Plus);
  if (arity(test) == 2) {
    if (!input.pair_coloring()) {
      throw PreconditionError(std::string(to_string(test)) + " requires a pair coloring");
    }
    if (!options.waive_tnd && !input.pair_coloring()->target_node_distinguishable()) {
      throw PreconditionError(std::string(to_string(test)) +
                              ": pair coloring does not satisfy target node distinguishability");
    }
    if (input.num_nodes() > options.max_pair_nodes) {
      throw PreconditionError("arity-2 tests are capped at " +
                              std::to_string(options.max_pair_nodes) + " nodes");
    }
  }
  const KnowledgeGraph g = augmented ? augment(input) : input;

  WLTrace trace;
  trace.test = test;
  trace.num_nodes = g.num_nodes();
  trace.node_names = g.node_names();
  trace.colorings.push_back(initial_coloring(test, g));

  // Monotone refinement bounds the number of strict refinements by the size
  // of the index set.
  const std::size_t index_size = trace.colorings[0].size();
  const std::size_t limit = horizon.iterations ? *horizon.iterations : index_size + 1;
  for (std::size_t t = 0; t < limit; ++t) {
    const Coloring& own = trace.colorings[f(t)];
    Coloring next = step(test, g, own, trace.colorings[t]);
    trace.colorings.push_back(std::move(next));
    const std::size_t s = t + 1;
    if (!trace.stabilized_at && equivalent(trace.colorings[s], trace.colorings[s - 1])) {
      trace.stabilized_at = s;
      if (!horizon.iterations) break;
    }
  }
  return trace;
}

Distinction distinguishes(const WLTrace& trace, std::size_t x, std::size_t y) {
  if (x == y) return Distinction::Never();
  const std::size_t size = trace.colorings.empty() ? 0 : trace.colorings[0].size();
  if (x >= size || y >= size) throw LookupError("index out of range for trace");
  for (std::size_t t = 0; t < trace.colorings.size(); ++t) {
    if (trace.colorings[t][x] != trace.colorings[t][y]) return Distinction::At(t);
  }
  return trace.stabilized_at ? Distinction::Never() : Distinction::Unknown();
}

std::optional<std::size_t> monotonicity_violation(const WLTrace& trace) {
  for (std::size_t t = 0; t + 1 < trace.colorings.size(); ++t) {
    if (!refines(trace.colorings[t + 1], trace.colorings[t])) return t;
  }
  return std::nullopt;
}

nlohmann::json trace_to_json(const WLTrace& trace) {
  nlohmann::json partitions = nlohmann::json::array();
  const std::size_t n = trace.num_nodes;
  for (const Coloring& c : trace.colorings) {
    nlohmann::json part = nlohmann::json::array();
    for (const auto& cls : classes(c)) {
      nlohmann::json members = nlohmann::json::array();
      for (std::size_t i : cls) {
        if (trace.arity() == 1) {
          members.push_back(trace.node_names[i]);
        } else {
          members.push_back({trace.node_names[i / n], trace.node_names[i % n]});
        }
      }
      part.push_back(std::move(members));
    }
    partitions.push_back(std::move(part));
  }
  nlohmann::json out;
  out["test"] = std::string(to_string(trace.test));
  out["iterations"] = trace.iterations();
  out["partitions"] = std::move(partitions);
  out["stabilized_at"] = trace.stabilized_at ? nlohmann::json(*trace.stabilized_at) : nlohmann::json();
  return out;
}

}  // namespace relwl
