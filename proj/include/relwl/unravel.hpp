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
#include <string>
#include <vector>

#include "relwl/kg.hpp"

namespace relwl {

inline constexpr std::size_t kDefaultNodeBudget = 1'000'000;

// Unr_G^L(v): one tree node per typed directed path of length <= L ending at
// the root. Node 0 is the root; every other node i has exactly one parent and
// the tree fact relation(i, parent).
struct UnravellingTree {
  struct Node {
    std::vector<NodeId> path;    // (v, u_1, ..., u_i)
    std::size_t parent = 0;      // ignored for the root
    RelationId relation = 0;     // fact relation(this, parent); ignored for the root
    ColorId color = 0;           // c(u_i)
    std::vector<std::size_t> children;
  };

  std::vector<Node> nodes;
  // Vocabularies copied from the source graph so codes can be compared
  // across graphs by label.
  std::vector<std::string> color_labels;
  std::vector<std::string> relation_names;

  std::size_t depth(std::size_t i) const { return nodes[i].path.size() - 1; }
};

// Throws BudgetExceeded when the tree would exceed `node_budget` nodes.
UnravellingTree unravel(const KnowledgeGraph& g, NodeId root, std::size_t depth,
                        std::size_t node_budget = kDefaultNodeBudget);

// Canonical string for the tree up to root-, color- and relation-preserving
// isomorphism: code(x) = "(" label ";" sorted(relation ":" code(child)) ")".
std::string canonical_tree_code(const UnravellingTree& tree);

}  // namespace relwl
