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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace relwl {

using NodeId = std::uint32_t;
using RelationId = std::uint32_t;
using ColorId = std::uint32_t;

// A typed directed fact relation(source, target).
struct Fact {
  RelationId relation;
  NodeId source;
  NodeId target;

  auto operator<=>(const Fact&) const = default;
};

// One entry of the incoming adjacency of a node: relation(source, node).
struct InEdge {
  RelationId relation;
  NodeId source;

  auto operator<=>(const InEdge&) const = default;
};

// Labelled node coloring. `ids[v]` indexes into `labels`.
struct NodeColoring {
  std::vector<ColorId> ids;
  std::vector<std::string> labels;

  static NodeColoring Uniform(std::size_t num_nodes);
  // Interns `per_node` labels in first-appearance order.
  static NodeColoring FromLabels(const std::vector<std::string>& per_node);

  const std::string& label(NodeId v) const { return labels[ids[v]]; }
};

// Total coloring of V x V. Pair (u, v) lives at index u * n + v.
class PairColoring {
 public:
  PairColoring() = default;
  PairColoring(std::size_t num_nodes, std::vector<ColorId> colors,
               std::vector<std::string> labels);

  static PairColoring FromLabels(std::size_t num_nodes,
                                 const std::vector<std::string>& per_pair);

  std::size_t num_nodes() const { return num_nodes_; }
  ColorId at(NodeId u, NodeId v) const { return colors_[u * num_nodes_ + v]; }
  const std::string& label(NodeId u, NodeId v) const { return labels_[at(u, v)]; }
  const std::vector<ColorId>& colors() const { return colors_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<ColorId> find_label(std::string_view label) const;

  // eta(u, u) != eta(u, v) for every u and every v != u.
  bool target_node_distinguishable() const { return tnd_; }

 private:
  std::size_t num_nodes_ = 0;
  std::vector<ColorId> colors_;
  std::vector<std::string> labels_;
  bool tnd_ = true;
};

// Immutable knowledge graph G = (V, E, R, c, eta, x). Facts are a set; nodes
// and relations are dense ids in the order they were first introduced.
class KnowledgeGraph {
 public:
  KnowledgeGraph() = default;
  // Validates ids, collapses duplicate facts (keeping first appearance) and
  // builds the incoming adjacency.
  KnowledgeGraph(std::vector<std::string> node_names,
                 std::vector<std::string> relation_names, std::vector<Fact> facts,
                 std::optional<NodeColoring> node_coloring = std::nullopt,
                 std::optional<PairColoring> pair_coloring = std::nullopt);

  std::size_t num_nodes() const { return node_names_.size(); }
  std::size_t num_relations() const { return relation_names_.size(); }
  const std::vector<Fact>& facts() const { return facts_; }

  const std::vector<std::string>& node_names() const { return node_names_; }
  const std::vector<std::string>& relation_names() const { return relation_names_; }
  const std::string& node_name(NodeId v) const { return node_names_.at(v); }
  const std::string& relation_name(RelationId r) const { return relation_names_.at(r); }
  std::optional<NodeId> find_node(std::string_view name) const;
  std::optional<RelationId> find_relation(std::string_view name) const;
  NodeId node(std::string_view name) const;          // throws LookupError
  RelationId relation(std::string_view name) const;  // throws LookupError

  const NodeColoring& node_coloring() const { return node_coloring_; }
  const std::optional<PairColoring>& pair_coloring() const { return pair_coloring_; }
  const std::optional<std::vector<std::vector<double>>>& features() const {
    return features_;
  }

  // Incoming facts of v, sorted by (relation, source).
  std::span<const InEdge> incoming(NodeId v) const;
  bool has_fact(const Fact& f) const;

  KnowledgeGraph with_node_coloring(NodeColoring coloring) const;
  KnowledgeGraph with_pair_coloring(PairColoring coloring) const;
  KnowledgeGraph without_pair_coloring() const;
  KnowledgeGraph with_features(std::vector<std::vector<double>> features) const;

 private:
  void index();

  std::vector<std::string> node_names_;
  std::vector<std::string> relation_names_;
  std::vector<Fact> facts_;
  NodeColoring node_coloring_;
  std::optional<PairColoring> pair_coloring_;
  std::optional<std::vector<std::vector<double>>> features_;
  std::unordered_map<std::string, NodeId> node_index_;
  std::unordered_map<std::string, RelationId> relation_index_;
  std::vector<std::size_t> in_offsets_;
  std::vector<InEdge> in_edges_;
};

// Reads a `head \t relation \t tail` triple file, optionally with a node-color
// file (`node \t label`) and a pair-color file (`node \t node \t label`).
// Lines starting with '#' and blank lines are ignored.
KnowledgeGraph load_graph(const std::filesystem::path& triples,
                          const std::optional<std::filesystem::path>& node_colors = {},
                          const std::optional<std::filesystem::path>& pair_colors = {});

// Same formats, from in-memory text. `source` only labels error messages.
KnowledgeGraph parse_graph(std::string_view triples, std::string_view source = "<triples>");
NodeColoring parse_node_colors(const KnowledgeGraph& g, std::string_view text,
                               std::string_view source = "<colors>");
PairColoring parse_pair_colors(const KnowledgeGraph& g, std::string_view text,
                               std::string_view source = "<pair-colors>");

// Writers for the same formats (used to export fixtures).
std::string format_triples(const KnowledgeGraph& g);
std::string format_node_colors(const KnowledgeGraph& g);
std::string format_pair_colors(const KnowledgeGraph& g);

// N_r(v) = { u | r(u, v) in E }, sorted.
std::vector<NodeId> neighborhood(const KnowledgeGraph& g, NodeId v, RelationId r);

// G+ : adds a fresh inverse symbol per relation and r^-(v, u) for every
// r(u, v) with u != v. Inverse of relation i gets id |R| + i.
KnowledgeGraph augment(const KnowledgeGraph& g);

// G^2 over V x V (lexicographic, (u, v) -> u * n + v) with facts
// r((a, w), (a, v)) for every r(w, v) and every a; node colors from eta.
KnowledgeGraph product_square(const KnowledgeGraph& g);

enum class PairColoringMode { kDiagonal, kColoredDiagonal };

// Diagonal: "eq" on (u, u), "neq" elsewhere. Colored-diagonal: label
// "<c(u)>|<c(v)>|eq" or "...|neq".
PairColoring default_pair_coloring(const KnowledgeGraph& g,
                                   PairColoringMode mode = PairColoringMode::kDiagonal);

// Applies a node permutation: node v of `g` becomes node perm[v]. Names move
// with their nodes, so the result is isomorphic to `g` by construction.
KnowledgeGraph permute_nodes(const KnowledgeGraph& g, const std::vector<NodeId>& perm);

}  // namespace relwl
