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

#include "relwl/unravel.hpp"

#include <algorithm>

#include "relwl/error.hpp"

namespace relwl {
namespace {

// Length-prefixed so labels containing delimiters cannot collide.
std::string quoted(const std::string& s) { return std::to_string(s.size()) + "#" + s; }

}  // namespace

UnravellingTree unravel(const KnowledgeGraph& g, NodeId root, std::size_t depth,
                        std::size_t node_budget) {
  if (root >= g.num_nodes()) throw LookupError("unknown node id " + std::to_string(root));
  UnravellingTree tree;
  tree.color_labels = g.node_coloring().labels;
  tree.relation_names = g.relation_names();
  tree.nodes.push_back({{root}, 0, 0, g.node_coloring().ids[root], {}});
  // Nodes are appended level by level, so a single forward sweep is a BFS.
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    if (tree.depth(i) >= depth) continue;
    const NodeId end = tree.nodes[i].path.back();
    for (const InEdge& e : g.incoming(end)) {
      if (tree.nodes.size() >= node_budget) {
        throw BudgetExceeded("unravelling exceeds node budget of " + std::to_string(node_budget));
      }
      UnravellingTree::Node child;
      child.path = tree.nodes[i].path;
      child.path.push_back(e.source);
      child.parent = i;
      child.relation = e.relation;
      child.color = g.node_coloring().ids[e.source];
      tree.nodes[i].children.push_back(tree.nodes.size());
      tree.nodes.push_back(std::move(child));
    }
  }
  return tree;
}

std::string canonical_tree_code(const UnravellingTree& tree) {
  if (tree.nodes.empty()) return "()";
  std::vector<std::string> code(tree.nodes.size());
  // Children always have larger indices than their parent.
  for (std::size_t i = tree.nodes.size(); i-- > 0;) {
    const auto& node = tree.nodes[i];
    std::vector<std::string> parts;
    parts.reserve(node.children.size());
    for (std::size_t c : node.children) {
      parts.push_back(quoted(tree.relation_names[tree.nodes[c].relation]) + ":" + code[c]);
      code[c].clear();
      code[c].shrink_to_fit();
    }
    std::sort(parts.begin(), parts.end());
    std::string out = "(" + quoted(tree.color_labels[node.color]) + ";";
    for (std::size_t k = 0; k < parts.size(); ++k) {
      if (k) out += ',';
      out += parts[k];
    }
    out += ')';
    code[i] = std::move(out);
  }
  return code[0];
}

}  // namespace relwl
