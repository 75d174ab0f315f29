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

// Brute-force reference implementations used only by the tests. They share
// no code with the library beyond the graph container.

#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "relwl/kg.hpp"

namespace oracle {

using relwl::KnowledgeGraph;
using relwl::NodeId;

using Partition = std::vector<int>;

// Same-class test for two colorings given as arbitrary ints.
inline bool same_partition(const std::vector<int>& a, const std::vector<std::uint32_t>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if ((a[i] == a[j]) != (b[i] == b[j])) return false;
  return true;
}

inline bool finer_or_equal(const std::vector<std::uint32_t>& fine,
                           const std::vector<std::uint32_t>& coarse) {
  for (std::size_t i = 0; i < fine.size(); ++i)
    for (std::size_t j = 0; j < fine.size(); ++j)
      if (fine[i] == fine[j] && coarse[i] != coarse[j]) return false;
  return true;
}

template <typename Key>
std::vector<int> relabel(const std::vector<Key>& keys) {
  std::map<Key, int> ids;
  std::vector<int> out;
  for (const auto& k : keys) out.push_back(ids.emplace(k, static_cast<int>(ids.size())).first->second);
  return out;
}

// Facts (r, a, b) as a set of tuples, scanned naively.
inline std::set<std::tuple<std::uint32_t, NodeId, NodeId>> fact_set(const KnowledgeGraph& g,
                                                                   bool augmented) {
  std::set<std::tuple<std::uint32_t, NodeId, NodeId>> out;
  const auto nr = static_cast<std::uint32_t>(g.num_relations());
  for (const auto& f : g.facts()) {
    out.emplace(f.relation, f.source, f.target);
    if (augmented && f.source != f.target) out.emplace(nr + f.relation, f.target, f.source);
  }
  return out;
}

// rwl1 with history f given as a table of length >= T.
inline std::vector<std::vector<int>> rwl1(const KnowledgeGraph& g, std::size_t T,
                                          const std::vector<std::size_t>& f) {
  const std::size_t n = g.num_nodes();
  const auto facts = fact_set(g, false);
  std::vector<std::vector<int>> out;
  std::vector<std::string> init;
  for (NodeId v = 0; v < n; ++v) init.push_back(g.node_coloring().label(v));
  out.push_back(relabel(init));
  for (std::size_t t = 0; t < T; ++t) {
    using Sig = std::pair<int, std::map<std::pair<int, std::uint32_t>, int>>;
    std::vector<Sig> sigs(n);
    for (NodeId v = 0; v < n; ++v) {
      sigs[v].first = out[f[t]][v];
      for (const auto& [r, a, b] : facts)
        if (b == v) ++sigs[v].second[{out[t][a], r}];
    }
    out.push_back(relabel(sigs));
  }
  return out;
}

// rawl2 (symmetric = false) or rwl2 (symmetric = true), optionally on G+.
inline std::vector<std::vector<int>> pair_test(const KnowledgeGraph& g, std::size_t T,
                                               bool symmetric, bool augmented) {
  const std::size_t n = g.num_nodes();
  const auto facts = fact_set(g, augmented);
  std::vector<std::vector<int>> out;
  std::vector<std::string> init;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = 0; v < n; ++v) init.push_back(g.pair_coloring()->label(u, v));
  out.push_back(relabel(init));
  for (std::size_t t = 0; t < T; ++t) {
    using Multiset = std::map<std::pair<int, std::uint32_t>, int>;
    using Sig = std::tuple<int, Multiset, Multiset>;
    std::vector<Sig> sigs(n * n);
    const auto& c = out[t];
    for (NodeId u = 0; u < n; ++u) {
      for (NodeId v = 0; v < n; ++v) {
        Sig& s = sigs[u * n + v];
        std::get<0>(s) = c[u * n + v];
        for (const auto& [r, a, b] : facts) {
          if (b == v) ++std::get<1>(s)[{c[u * n + a], r}];
          if (symmetric && b == u) ++std::get<2>(s)[{c[a * n + v], r}];
        }
      }
    }
    out.push_back(relabel(sigs));
  }
  return out;
}

}  // namespace oracle
