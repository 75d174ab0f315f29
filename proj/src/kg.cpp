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

#include "relwl/kg.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include "relwl/error.hpp"

namespace relwl {
namespace {

constexpr std::string_view kDefaultColor = "default";

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

// Calls fn(line_number, fields) for every non-comment, non-blank line.
template <typename Fn>
void for_each_record(std::string_view text, std::size_t arity, std::string_view source,
                     Fn&& fn, std::size_t alt_arity = 0) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    pos = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') {
      if (end == text.size()) break;
      continue;
    }
    auto fields = split_tabs(line);
    if (fields.size() != arity && (alt_arity == 0 || fields.size() != alt_arity)) {
      throw ParseError(std::string(source) + ": line " + std::to_string(line_no) +
                           ": expected " + std::to_string(arity) +
                           " tab-separated fields, got " + std::to_string(fields.size()),
                       line_no);
    }
    for (auto f : fields) {
      if (f.empty()) {
        throw ParseError(std::string(source) + ": line " + std::to_string(line_no) +
                             ": empty field",
                         line_no);
      }
    }
    fn(line_no, fields);
    if (end == text.size()) break;
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LookupError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fresh_inverse_name(const std::string& base,
                               const std::set<std::string>& taken) {
  std::string name = base + "^-";
  while (taken.count(name)) name += "'";
  return name;
}

}  // namespace

NodeColoring NodeColoring::Uniform(std::size_t num_nodes) {
  return NodeColoring{std::vector<ColorId>(num_nodes, 0), {std::string(kDefaultColor)}};
}

NodeColoring NodeColoring::FromLabels(const std::vector<std::string>& per_node) {
  NodeColoring out;
  std::unordered_map<std::string, ColorId> index;
  out.ids.reserve(per_node.size());
  for (const auto& label : per_node) {
    auto [it, inserted] = index.emplace(label, static_cast<ColorId>(out.labels.size()));
    if (inserted) out.labels.push_back(label);
    out.ids.push_back(it->second);
  }
  if (out.labels.empty()) out.labels.emplace_back(kDefaultColor);
  return out;
}

PairColoring::PairColoring(std::size_t num_nodes, std::vector<ColorId> colors,
                           std::vector<std::string> labels)
    : num_nodes_(num_nodes), colors_(std::move(colors)), labels_(std::move(labels)) {
  if (colors_.size() != num_nodes_ * num_nodes_) {
    throw ValidationError("pair coloring must be total on V x V");
  }
  for (ColorId c : colors_) {
    if (c >= labels_.size()) throw ValidationError("pair color id out of range");
  }
  tnd_ = true;
  for (std::size_t u = 0; u < num_nodes_ && tnd_; ++u) {
    for (std::size_t v = 0; v < num_nodes_; ++v) {
      if (u != v && colors_[u * num_nodes_ + u] == colors_[u * num_nodes_ + v]) {
        tnd_ = false;
        break;
      }
    }
  }
}

PairColoring PairColoring::FromLabels(std::size_t num_nodes,
                                      const std::vector<std::string>& per_pair) {
  std::vector<ColorId> ids;
  std::vector<std::string> labels;
  std::unordered_map<std::string, ColorId> index;
  ids.reserve(per_pair.size());
  for (const auto& label : per_pair) {
    auto [it, inserted] = index.emplace(label, static_cast<ColorId>(labels.size()));
    if (inserted) labels.push_back(label);
    ids.push_back(it->second);
  }
  return PairColoring(num_nodes, std::move(ids), std::move(labels));
}

std::optional<ColorId> PairColoring::find_label(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return static_cast<ColorId>(i);
  }
  return std::nullopt;
}

KnowledgeGraph::KnowledgeGraph(std::vector<std::string> node_names,
                               std::vector<std::string> relation_names,
                               std::vector<Fact> facts,
                               std::optional<NodeColoring> node_coloring,
                               std::optional<PairColoring> pair_coloring)
    : node_names_(std::move(node_names)),
      relation_names_(std::move(relation_names)),
      pair_coloring_(std::move(pair_coloring)) {
  for (std::size_t i = 0; i < node_names_.size(); ++i) {
    if (!node_index_.emplace(node_names_[i], static_cast<NodeId>(i)).second) {
      throw ValidationError("duplicate node name: " + node_names_[i]);
    }
  }
  for (std::size_t i = 0; i < relation_names_.size(); ++i) {
    if (!relation_index_.emplace(relation_names_[i], static_cast<RelationId>(i)).second) {
      throw ValidationError("duplicate relation name: " + relation_names_[i]);
    }
  }
  std::set<Fact> seen;
  for (const Fact& f : facts) {
    if (f.relation >= relation_names_.size() || f.source >= node_names_.size() ||
        f.target >= node_names_.size()) {
      throw ValidationError("fact references an unknown node or relation");
    }
    if (seen.insert(f).second) facts_.push_back(f);
  }
  node_coloring_ = node_coloring ? std::move(*node_coloring) : NodeColoring::Uniform(num_nodes());
  if (node_coloring_.ids.size() != num_nodes()) {
    throw ValidationError("node coloring must assign a color to every node");
  }
  for (ColorId c : node_coloring_.ids) {
    if (c >= node_coloring_.labels.size()) throw ValidationError("node color id out of range");
  }
  if (pair_coloring_ && pair_coloring_->num_nodes() != num_nodes()) {
    throw ValidationError("pair coloring must be total on V x V");
  }
  index();
}

void KnowledgeGraph::index() {
  const std::size_t n = num_nodes();
  in_offsets_.assign(n + 1, 0);
  for (const Fact& f : facts_) ++in_offsets_[f.target + 1];
  for (std::size_t v = 0; v < n; ++v) in_offsets_[v + 1] += in_offsets_[v];
  in_edges_.assign(facts_.size(), InEdge{});
  std::vector<std::size_t> cursor(in_offsets_.begin(), in_offsets_.end() - 1);
  for (const Fact& f : facts_) in_edges_[cursor[f.target]++] = InEdge{f.relation, f.source};
  for (std::size_t v = 0; v < n; ++v) {
    std::sort(in_edges_.begin() + in_offsets_[v], in_edges_.begin() + in_offsets_[v + 1]);
  }
}

std::optional<NodeId> KnowledgeGraph::find_node(std::string_view name) const {
  auto it = node_index_.find(std::string(name));
  if (it == node_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<RelationId> KnowledgeGraph::find_relation(std::string_view name) const {
  auto it = relation_index_.find(std::string(name));
  if (it == relation_index_.end()) return std::nullopt;
  return it->second;
}

NodeId KnowledgeGraph::node(std::string_view name) const {
  if (auto id = find_node(name)) return *id;
  throw LookupError("unknown node: " + std::string(name));
}

RelationId KnowledgeGraph::relation(std::string_view name) const {
  if (auto id = find_relation(name)) return *id;
  throw LookupError("unknown relation: " + std::string(name));
}

std::span<const InEdge> KnowledgeGraph::incoming(NodeId v) const {
  if (v >= num_nodes()) throw LookupError("unknown node id " + std::to_string(v));
  return std::span<const InEdge>(in_edges_.data() + in_offsets_[v],
                                 in_offsets_[v + 1] - in_offsets_[v]);
}

bool KnowledgeGraph::has_fact(const Fact& f) const {
  if (f.target >= num_nodes()) return false;
  auto in = incoming(f.target);
  return std::binary_search(in.begin(), in.end(), InEdge{f.relation, f.source});
}

KnowledgeGraph KnowledgeGraph::with_node_coloring(NodeColoring coloring) const {
  KnowledgeGraph g(node_names_, relation_names_, facts_, std::move(coloring), pair_coloring_);
  g.features_ = features_;
  return g;
}

KnowledgeGraph KnowledgeGraph::with_pair_coloring(PairColoring coloring) const {
  KnowledgeGraph g(node_names_, relation_names_, facts_, node_coloring_, std::move(coloring));
  g.features_ = features_;
  return g;
}

KnowledgeGraph KnowledgeGraph::without_pair_coloring() const {
  KnowledgeGraph g(node_names_, relation_names_, facts_, node_coloring_, std::nullopt);
  g.features_ = features_;
  return g;
}

KnowledgeGraph KnowledgeGraph::with_features(std::vector<std::vector<double>> features) const {
  if (features.size() != num_nodes()) {
    throw ValidationError("feature map must cover every node");
  }
  KnowledgeGraph g = *this;
  g.features_ = std::move(features);
  return g;
}

KnowledgeGraph parse_graph(std::string_view triples, std::string_view source) {
  std::vector<std::string> nodes;
  std::vector<std::string> relations;
  std::unordered_map<std::string, NodeId> node_index;
  std::unordered_map<std::string, RelationId> relation_index;
  std::vector<Fact> facts;
  auto intern_node = [&](std::string_view name) {
    auto [it, inserted] = node_index.emplace(std::string(name), static_cast<NodeId>(nodes.size()));
    if (inserted) nodes.emplace_back(name);
    return it->second;
  };
  for_each_record(triples, 3, source, [&](std::size_t, const auto& fields) {
    // A lone name declares a node, so isolated nodes survive a round trip.
    if (fields.size() == 1) {
      intern_node(fields[0]);
      return;
    }
    NodeId head = intern_node(fields[0]);
    auto [rit, inserted] = relation_index.emplace(std::string(fields[1]),
                                                  static_cast<RelationId>(relations.size()));
    if (inserted) relations.emplace_back(fields[1]);
    NodeId tail = intern_node(fields[2]);
    facts.push_back(Fact{rit->second, head, tail});
  }, 1);
  return KnowledgeGraph(std::move(nodes), std::move(relations), std::move(facts));
}

NodeColoring parse_node_colors(const KnowledgeGraph& g, std::string_view text,
                               std::string_view source) {
  std::vector<std::optional<std::string>> assigned(g.num_nodes());
  for_each_record(text, 2, source, [&](std::size_t line_no, const auto& fields) {
    auto v = g.find_node(fields[0]);
    if (!v) {
      throw ValidationError(std::string(source) + ": line " + std::to_string(line_no) +
                            ": unknown node " + std::string(fields[0]));
    }
    assigned[*v] = std::string(fields[1]);
  });
  std::vector<std::string> labels;
  labels.reserve(assigned.size());
  for (auto& a : assigned) labels.push_back(a ? *a : std::string(kDefaultColor));
  return NodeColoring::FromLabels(labels);
}

PairColoring parse_pair_colors(const KnowledgeGraph& g, std::string_view text,
                               std::string_view source) {
  const std::size_t n = g.num_nodes();
  std::vector<std::optional<std::string>> assigned(n * n);
  for_each_record(text, 3, source, [&](std::size_t line_no, const auto& fields) {
    auto u = g.find_node(fields[0]);
    auto v = g.find_node(fields[1]);
    if (!u || !v) {
      throw ValidationError(std::string(source) + ": line " + std::to_string(line_no) +
                            ": unknown node in pair (" + std::string(fields[0]) + ", " +
                            std::string(fields[1]) + ")");
    }
    assigned[*u * n + *v] = std::string(fields[2]);
  });
  std::vector<std::string> labels;
  labels.reserve(assigned.size());
  for (std::size_t i = 0; i < assigned.size(); ++i) {
    if (!assigned[i]) {
      throw ValidationError(std::string(source) + ": pair (" + g.node_name(i / n) + ", " +
                            g.node_name(i % n) + ") has no color; pair colorings must be total");
    }
    labels.push_back(*assigned[i]);
  }
  return PairColoring::FromLabels(n, labels);
}

KnowledgeGraph load_graph(const std::filesystem::path& triples,
                          const std::optional<std::filesystem::path>& node_colors,
                          const std::optional<std::filesystem::path>& pair_colors) {
  KnowledgeGraph g = parse_graph(read_file(triples), triples.string());
  if (node_colors) {
    g = g.with_node_coloring(parse_node_colors(g, read_file(*node_colors), node_colors->string()));
  }
  if (pair_colors) {
    g = g.with_pair_coloring(parse_pair_colors(g, read_file(*pair_colors), pair_colors->string()));
  }
  return g;
}

std::string format_triples(const KnowledgeGraph& g) {
  std::string out;
  std::vector<bool> mentioned(g.num_nodes(), false);
  for (const Fact& f : g.facts()) mentioned[f.source] = mentioned[f.target] = true;
  // With isolated nodes present, declare every node up front so reloading
  // keeps the node order.
  if (std::find(mentioned.begin(), mentioned.end(), false) != mentioned.end()) {
    for (NodeId v = 0; v < g.num_nodes(); ++v) out += g.node_name(v) + '\n';
  }
  for (const Fact& f : g.facts()) {
    out += g.node_name(f.source) + '\t' + g.relation_name(f.relation) + '\t' +
           g.node_name(f.target) + '\n';
  }
  return out;
}

std::string format_node_colors(const KnowledgeGraph& g) {
  std::string out;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    out += g.node_name(v) + '\t' + g.node_coloring().label(v) + '\n';
  }
  return out;
}

std::string format_pair_colors(const KnowledgeGraph& g) {
  if (!g.pair_coloring()) throw PreconditionError("graph has no pair coloring");
  std::string out;
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
      out += g.node_name(u) + '\t' + g.node_name(v) + '\t' + g.pair_coloring()->label(u, v) + '\n';
    }
  }
  return out;
}

std::vector<NodeId> neighborhood(const KnowledgeGraph& g, NodeId v, RelationId r) {
  if (r >= g.num_relations()) throw LookupError("unknown relation id " + std::to_string(r));
  std::vector<NodeId> out;
  for (const InEdge& e : g.incoming(v)) {
    if (e.relation == r) out.push_back(e.source);
  }
  return out;  // sorted: incoming() is ordered by (relation, source)
}

KnowledgeGraph augment(const KnowledgeGraph& g) {
  std::vector<std::string> relations = g.relation_names();
  std::set<std::string> taken(relations.begin(), relations.end());
  const auto base = static_cast<RelationId>(g.num_relations());
  for (RelationId r = 0; r < base; ++r) {
    std::string name = fresh_inverse_name(g.relation_name(r), taken);
    taken.insert(name);
    relations.push_back(std::move(name));
  }
  std::vector<Fact> facts = g.facts();
  for (const Fact& f : g.facts()) {
    if (f.source != f.target) facts.push_back(Fact{base + f.relation, f.target, f.source});
  }
  KnowledgeGraph out(g.node_names(), std::move(relations), std::move(facts), g.node_coloring(),
                     g.pair_coloring());
  if (g.features()) out = out.with_features(*g.features());
  return out;
}

KnowledgeGraph product_square(const KnowledgeGraph& g) {
  if (!g.pair_coloring()) {
    throw PreconditionError("product_square requires a pair coloring");
  }
  const std::size_t n = g.num_nodes();
  const PairColoring& eta = *g.pair_coloring();
  std::vector<std::string> names;
  names.reserve(n * n);
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = 0; v < n; ++v) {
      names.push_back("(" + g.node_name(u) + "," + g.node_name(v) + ")");
    }
  }
  std::vector<Fact> facts;
  facts.reserve(n * g.facts().size());
  for (NodeId a = 0; a < n; ++a) {
    for (const Fact& f : g.facts()) {
      facts.push_back(Fact{f.relation, static_cast<NodeId>(a * n + f.source),
                           static_cast<NodeId>(a * n + f.target)});
    }
  }
  NodeColoring colors{eta.colors(), eta.labels()};
  if (colors.labels.empty()) colors.labels.emplace_back(kDefaultColor);
  return KnowledgeGraph(std::move(names), g.relation_names(), std::move(facts),
                        std::move(colors));
}

PairColoring default_pair_coloring(const KnowledgeGraph& g, PairColoringMode mode) {
  const std::size_t n = g.num_nodes();
  std::vector<std::string> labels;
  labels.reserve(n * n);
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = 0; v < n; ++v) {
      const char* eq = (u == v) ? "eq" : "neq";
      if (mode == PairColoringMode::kDiagonal) {
        labels.emplace_back(eq);
      } else {
        labels.push_back(g.node_coloring().label(u) + "|" + g.node_coloring().label(v) + "|" + eq);
      }
    }
  }
  PairColoring out = PairColoring::FromLabels(n, labels);
  if (mode == PairColoringMode::kDiagonal && out.labels().size() < 2) {
    // Keep both classes in the vocabulary even for graphs with < 2 nodes.
    std::vector<std::string> vocab{"eq", "neq"};
    std::vector<ColorId> ids(out.colors().size(), 0);
    return PairColoring(n, std::move(ids), std::move(vocab));
  }
  return out;
}

KnowledgeGraph permute_nodes(const KnowledgeGraph& g, const std::vector<NodeId>& perm) {
  const std::size_t n = g.num_nodes();
  if (perm.size() != n) throw ValidationError("permutation size mismatch");
  std::vector<bool> hit(n, false);
  for (NodeId p : perm) {
    if (p >= n || hit[p]) throw ValidationError("not a permutation");
    hit[p] = true;
  }
  std::vector<std::string> names(n);
  std::vector<ColorId> color_ids(n);
  for (NodeId v = 0; v < n; ++v) {
    names[perm[v]] = g.node_name(v);
    color_ids[perm[v]] = g.node_coloring().ids[v];
  }
  std::vector<Fact> facts;
  facts.reserve(g.facts().size());
  for (const Fact& f : g.facts()) facts.push_back(Fact{f.relation, perm[f.source], perm[f.target]});
  std::optional<PairColoring> pairs;
  if (g.pair_coloring()) {
    std::vector<ColorId> ids(n * n);
    for (NodeId u = 0; u < n; ++u)
      for (NodeId v = 0; v < n; ++v) ids[perm[u] * n + perm[v]] = g.pair_coloring()->at(u, v);
    pairs = PairColoring(n, std::move(ids), g.pair_coloring()->labels());
  }
  KnowledgeGraph out(std::move(names), g.relation_names(), std::move(facts),
                     NodeColoring{std::move(color_ids), g.node_coloring().labels}, std::move(pairs));
  if (g.features()) {
    std::vector<std::vector<double>> x(n);
    for (NodeId v = 0; v < n; ++v) x[perm[v]] = (*g.features())[v];
    out = out.with_features(std::move(x));
  }
  return out;
}

}  // namespace relwl
