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

#include "relwl/logic.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <unordered_map>

#include "relwl/error.hpp"
#include "relwl/forward.hpp"

namespace relwl {
namespace {

using Kind = FormulaNode::Kind;

bool is_name_char(char c) {
  return !std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')' && c != '&' &&
         c != '!' && c != ',' && c != '[' && c != ']';
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  FormulaPtr parse() {
    FormulaPtr f = formula();
    skip();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) { throw ParseError(what, pos_); }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(std::string_view token) {
    skip();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view token) {
    if (!accept(token)) fail("expected '" + std::string(token) + "'");
  }

  std::string name(const char* what) {
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && is_name_char(text_[pos_])) ++pos_;
    if (pos_ == start) fail(std::string("expected ") + what);
    return std::string(text_.substr(start, pos_ - start));
  }

  std::size_t number() {
    skip();
    const std::size_t start = pos_;
    std::size_t value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      if (value > 1'000'000'000) fail("count too large");
      value = value * 10 + static_cast<std::size_t>(text_[pos_] - '0');
      ++pos_;
    }
    if (pos_ == start) fail("expected a count");
    if (value == 0) {
      pos_ = start;
      fail("count must be at least 1");
    }
    return value;
  }

  FormulaPtr formula() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of formula");
    if (accept("A:")) return atom(name("an atom label"));
    if (accept("!")) return negate(formula());
    if (accept("DIA[")) {
      std::string rel = name("a relation name");
      expect(",");
      std::size_t n = number();
      expect("]");
      expect("(");
      FormulaPtr body = formula();
      expect(")");
      return exists(n, std::move(rel), std::move(body));
    }
    if (accept("(")) {
      FormulaPtr a = formula();
      expect("&");
      FormulaPtr b = formula();
      expect(")");
      return conjoin(std::move(a), std::move(b));
    }
    fail("expected 'A:', '!', '(' or 'DIA['");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void collect(const FormulaPtr& f, Kind kind, std::set<std::string>& seen,
             std::vector<std::string>& out) {
  if (f->kind == kind) {
    const std::string& s = kind == Kind::kAtom ? f->label : f->relation;
    if (seen.insert(s).second) out.push_back(s);
  }
  if (f->left) collect(f->left, kind, seen, out);
  if (f->right) collect(f->right, kind, seen, out);
}

// Index of each atom label among the coloring's labels; throws for unknown atoms.
std::vector<std::size_t> atom_colors(const SubformulaIndex& index,
                                     const std::vector<std::string>& labels,
                                     std::string_view what) {
  std::vector<std::size_t> out(index.size(), 0);
  for (std::size_t i = 0; i < index.size(); ++i) {
    if (index.items[i]->kind != Kind::kAtom) continue;
    auto it = std::find(labels.begin(), labels.end(), index.items[i]->label);
    if (it == labels.end()) {
      throw LookupError("atom '" + index.items[i]->label + "' is not a " + std::string(what) +
                        " label of the graph");
    }
    out[i] = static_cast<std::size_t>(it - labels.begin());
  }
  return out;
}

Formula with_arity(const Formula& phi, LogicArity from, LogicArity to) {
  if (phi.arity != from) throw ValidationError("translation applied to a formula of the wrong arity");
  return Formula{to, phi.root};
}

}  // namespace

FormulaPtr atom(std::string label) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = Kind::kAtom;
  n->label = std::move(label);
  return n;
}

FormulaPtr negate(FormulaPtr f) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = Kind::kNot;
  n->left = std::move(f);
  return n;
}

FormulaPtr conjoin(FormulaPtr a, FormulaPtr b) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = Kind::kAnd;
  n->left = std::move(a);
  n->right = std::move(b);
  return n;
}

FormulaPtr exists(std::size_t count, std::string relation, FormulaPtr f) {
  if (count == 0) throw ValidationError("counting quantifier needs N >= 1");
  auto n = std::make_shared<FormulaNode>();
  n->kind = Kind::kExists;
  n->count = count;
  n->relation = std::move(relation);
  n->left = std::move(f);
  return n;
}

Formula parse_formula(std::string_view text, LogicArity arity) {
  return Formula{arity, Parser(text).parse()};
}

std::string to_string(const FormulaPtr& f) {
  switch (f->kind) {
    case Kind::kAtom:
      return "A:" + f->label;
    case Kind::kNot:
      return "!" + to_string(f->left);
    case Kind::kAnd:
      return "(" + to_string(f->left) + " & " + to_string(f->right) + ")";
    case Kind::kExists:
      return "DIA[" + f->relation + "," + std::to_string(f->count) + "](" + to_string(f->left) +
             ")";
  }
  return "";
}

bool same_formula(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  if (a->label != b->label || a->relation != b->relation || a->count != b->count) return false;
  return same_formula(a->left, b->left) && same_formula(a->right, b->right);
}

std::size_t depth(const FormulaPtr& f) {
  switch (f->kind) {
    case Kind::kAtom:
      return 0;
    case Kind::kAnd:
      return 1 + std::max(depth(f->left), depth(f->right));
    default:
      return 1 + depth(f->left);
  }
}

std::vector<std::string> atoms_of(const FormulaPtr& f) {
  std::set<std::string> seen;
  std::vector<std::string> out;
  collect(f, Kind::kAtom, seen, out);
  return out;
}

std::vector<std::string> relations_of(const FormulaPtr& f) {
  std::set<std::string> seen;
  std::vector<std::string> out;
  collect(f, Kind::kExists, seen, out);
  return out;
}

SubformulaIndex index_subformulas(const FormulaPtr& root) {
  SubformulaIndex index;
  std::unordered_map<std::string, std::size_t> position;
  // Post-order walk; syntactically equal subformulas share a position.
  auto visit = [&](auto&& self, const FormulaPtr& f) -> std::size_t {
    std::vector<std::size_t> kids;
    if (f->left) kids.push_back(self(self, f->left));
    if (f->right) kids.push_back(self(self, f->right));
    std::string key = to_string(f);
    auto it = position.find(key);
    if (it != position.end()) return it->second;
    const std::size_t at = index.items.size();
    position.emplace(std::move(key), at);
    index.items.push_back(f);
    index.children.push_back(std::move(kids));
    return at;
  };
  visit(visit, root);
  return index;
}

std::vector<bool> eval_rgfo3_table(const KnowledgeGraph& g, const Formula& phi) {
  if (phi.arity != LogicArity::kBinary) throw ValidationError("eval_rgfo3 needs a binary formula");
  if (!g.pair_coloring()) throw PreconditionError("binary formulas need a pair coloring");
  const PairColoring& eta = *g.pair_coloring();
  const std::size_t n = g.num_nodes();
  const SubformulaIndex index = index_subformulas(phi.root);
  const std::vector<std::size_t> color = atom_colors(index, eta.labels(), "pair color");

  std::vector<std::vector<bool>> truth(index.size(), std::vector<bool>(n * n, false));
  for (std::size_t i = 0; i < index.size(); ++i) {
    const FormulaNode& f = *index.items[i];
    const auto& kids = index.children[i];
    std::vector<bool>& out = truth[i];
    switch (f.kind) {
      case Kind::kAtom:
        for (std::size_t p = 0; p < n * n; ++p) out[p] = eta.colors()[p] == color[i];
        break;
      case Kind::kNot:
        for (std::size_t p = 0; p < n * n; ++p) out[p] = !truth[kids[0]][p];
        break;
      case Kind::kAnd:
        for (std::size_t p = 0; p < n * n; ++p) out[p] = truth[kids[0]][p] && truth[kids[1]][p];
        break;
      case Kind::kExists: {
        const auto r = g.find_relation(f.relation);
        if (!r) break;  // no facts of that relation
        const std::vector<bool>& body = truth[kids[0]];
        for (NodeId v = 0; v < n; ++v) {
          for (NodeId u = 0; u < n; ++u) {
            std::size_t witnesses = 0;
            for (const InEdge& e : g.incoming(v)) {
              if (e.relation == *r && body[u * n + e.source]) ++witnesses;
            }
            out[u * n + v] = witnesses >= f.count;
          }
        }
        break;
      }
    }
  }
  return truth.back();
}

bool eval_rgfo3(const KnowledgeGraph& g, const Formula& phi, NodeId u, NodeId v) {
  const std::size_t n = g.num_nodes();
  if (u >= n || v >= n) throw LookupError("node out of range");
  return eval_rgfo3_table(g, phi)[u * n + v];
}

std::vector<bool> eval_gml_table(const KnowledgeGraph& g, const Formula& phi) {
  if (phi.arity != LogicArity::kUnary) throw ValidationError("eval_gml needs a unary formula");
  const std::size_t n = g.num_nodes();
  const SubformulaIndex index = index_subformulas(phi.root);
  const NodeColoring& c = g.node_coloring();
  const std::vector<std::size_t> color = atom_colors(index, c.labels, "node color");

  std::vector<std::vector<bool>> truth(index.size(), std::vector<bool>(n, false));
  for (std::size_t i = 0; i < index.size(); ++i) {
    const FormulaNode& f = *index.items[i];
    const auto& kids = index.children[i];
    std::vector<bool>& out = truth[i];
    for (NodeId v = 0; v < n; ++v) {
      switch (f.kind) {
        case Kind::kAtom:
          out[v] = c.ids[v] == color[i];
          break;
        case Kind::kNot:
          out[v] = !truth[kids[0]][v];
          break;
        case Kind::kAnd:
          out[v] = truth[kids[0]][v] && truth[kids[1]][v];
          break;
        case Kind::kExists: {
          const auto r = g.find_relation(f.relation);
          std::size_t witnesses = 0;
          if (r) {
            for (const InEdge& e : g.incoming(v)) {
              if (e.relation == *r && truth[kids[0]][e.source]) ++witnesses;
            }
          }
          out[v] = witnesses >= f.count;
          break;
        }
      }
    }
  }
  return truth.back();
}

bool eval_gml(const KnowledgeGraph& g, const Formula& phi, NodeId v) {
  if (v >= g.num_nodes()) throw LookupError("node out of range");
  return eval_gml_table(g, phi)[v];
}

Formula translate_gml_to_rgfo3(const Formula& phi) {
  return with_arity(phi, LogicArity::kUnary, LogicArity::kBinary);
}

Formula translate_rgfo3_to_gml(const Formula& phi) {
  return with_arity(phi, LogicArity::kBinary, LogicArity::kUnary);
}

std::vector<Vector<double>> CompiledClassifier::initial_features(const KnowledgeGraph& g) const {
  const std::size_t width = subformulas.size();
  std::vector<Vector<double>> x(g.num_nodes(), Vector<double>(width, 0.0));
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    const std::string& label = g.node_coloring().label(v);
    for (std::size_t l = 0; l < width; ++l) {
      const FormulaNode& f = *subformulas.items[l];
      if (f.kind == Kind::kAtom && f.label == label) x[v][l] = 1.0;
    }
  }
  return x;
}

CompiledClassifier compile_gml_to_rmpnn(const Formula& phi, const std::vector<std::string>& colors,
                                        const std::vector<std::string>& relations) {
  if (phi.arity != LogicArity::kUnary) {
    throw ValidationError("only unary formulas compile to R-MPNNs");
  }
  CompiledClassifier out;
  out.color_vocabulary = colors;
  out.subformulas = index_subformulas(phi.root);
  const SubformulaIndex& index = out.subformulas;
  const std::size_t width = index.size();

  for (const auto& a : atoms_of(phi.root)) {
    if (std::find(colors.begin(), colors.end(), a) == colors.end()) {
      throw ValidationError("atom '" + a + "' is outside the declared color vocabulary");
    }
  }
  NetworkSpec& spec = out.spec;
  spec.kind = ModelKind::kRmpnn;
  spec.mode = NumericMode::kFloat64;
  spec.relations = relations;
  for (const auto& r : relations_of(phi.root)) {
    if (std::find(spec.relations.begin(), spec.relations.end(), r) == spec.relations.end()) {
      spec.relations.push_back(r);
    }
  }
  spec.init = Initialization::kZero;
  spec.message = Message::kMatrix;
  spec.aggregation = Aggregation::kSum;
  spec.activation = Activation::kTruncatedRelu;
  spec.update_form = UpdateForm::kSplit;
  spec.dims.assign(width + 1, width);
  spec.dims.push_back(1);

  auto relation_index = [&](const std::string& r) {
    return static_cast<std::size_t>(
        std::find(spec.relations.begin(), spec.relations.end(), r) - spec.relations.begin());
  };

  LayerParams layer;
  layer.weight = Matrix<Rational>(width, width);
  layer.bias = Vector<Rational>(width, Rational(0));
  layer.relation_matrices.assign(spec.relations.size(), Matrix<Rational>(width, width));
  for (std::size_t l = 0; l < width; ++l) {
    const FormulaNode& f = *index.items[l];
    const auto& kids = index.children[l];
    switch (f.kind) {
      case Kind::kAtom:
        layer.weight(l, l) = 1;
        break;
      case Kind::kNot:
        layer.weight(l, kids[0]) = -1;
        (*layer.bias)[l] = 1;
        break;
      case Kind::kAnd:
        layer.weight(l, kids[0]) += 1;
        layer.weight(l, kids[1]) += 1;
        (*layer.bias)[l] = -1;
        break;
      case Kind::kExists:
        layer.relation_matrices[relation_index(f.relation)](l, kids[0]) = 1;
        (*layer.bias)[l] = 1 - static_cast<long>(f.count);
        break;
    }
  }
  spec.layers.assign(width, layer);

  LayerParams extract;
  extract.weight = Matrix<Rational>(1, width);
  extract.weight(0, width - 1) = 1;
  extract.relation_matrices.assign(spec.relations.size(), Matrix<Rational>(1, width));
  spec.layers.push_back(std::move(extract));
  spec.validate();
  return out;
}

std::vector<bool> run_classifier(const CompiledClassifier& c, const KnowledgeGraph& g) {
  const FeatureTable<double> table = rmpnn_forward<double>(g, c.spec, c.initial_features(g));
  for (const auto& layer : table.layers) {
    for (const auto& h : layer) {
      for (double x : h) {
        if (x != 0.0 && x != 1.0) throw Error("compiled classifier produced a non-Boolean value");
      }
    }
  }
  std::vector<bool> out;
  for (const auto& h : table.layers.back()) out.push_back(h[0] == 1.0);
  return out;
}

std::vector<bool> classify_pairs_via_compile(const Formula& phi, const KnowledgeGraph& g) {
  if (!g.pair_coloring()) throw PreconditionError("binary formulas need a pair coloring");
  const Formula unary = translate_rgfo3_to_gml(phi);
  const KnowledgeGraph square = product_square(g);
  for (const auto& a : atoms_of(phi.root)) {
    if (!g.pair_coloring()->find_label(a)) {
      throw LookupError("atom '" + a + "' is not a pair color label of the graph");
    }
  }
  const CompiledClassifier c =
      compile_gml_to_rmpnn(unary, square.node_coloring().labels, square.relation_names());
  return run_classifier(c, square);
}

FormulaPtr random_formula(std::mt19937_64& rng, const std::vector<std::string>& atoms,
                          const std::vector<std::string>& relations,
                          const RandomFormulaConfig& config) {
  if (atoms.empty()) throw ValidationError("random_formula: empty atom vocabulary");
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  auto build = [&](auto&& self, std::size_t budget) -> FormulaPtr {
    // Leaves get more likely as the depth budget shrinks.
    if (budget == 0 || pick(config.max_depth + 1) >= budget + 1) return atom(atoms[pick(atoms.size())]);
    const std::size_t choice = pick(relations.empty() ? 2 : 3);
    if (choice == 0) return negate(self(self, budget - 1));
    if (choice == 1) return conjoin(self(self, budget - 1), self(self, budget - 1));
    const std::size_t count = 1 + pick(std::max<std::size_t>(config.max_count, 1));
    return exists(count, relations[pick(relations.size())], self(self, budget - 1));
  };
  return build(build, config.max_depth);
}

}  // namespace relwl
