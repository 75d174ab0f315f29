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
#include <memory>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "relwl/kg.hpp"
#include "relwl/matrix.hpp"
#include "relwl/network.hpp"

namespace relwl {

struct FormulaNode;
using FormulaPtr = std::shared_ptr<const FormulaNode>;

struct FormulaNode {
  enum class Kind { kAtom, kNot, kAnd, kExists };

  Kind kind = Kind::kAtom;
  std::string label;     // kAtom
  std::string relation;  // kExists
  std::size_t count = 1; // kExists, N >= 1
  FormulaPtr left;       // kNot, kAnd, kExists
  FormulaPtr right;      // kAnd
};

FormulaPtr atom(std::string label);
FormulaPtr negate(FormulaPtr f);
FormulaPtr conjoin(FormulaPtr a, FormulaPtr b);
// Throws ValidationError if count == 0.
FormulaPtr exists(std::size_t count, std::string relation, FormulaPtr f);

// Binary formulas are read over pairs with atoms on the pair coloring, unary
// formulas over nodes with atoms on the node coloring. The AST is shared.
enum class LogicArity { kBinary, kUnary };

struct Formula {
  LogicArity arity = LogicArity::kUnary;
  FormulaPtr root;
};

// Grammar: `A:<label>` | `!F` | `(F & F)` | `DIA[<rel>,<N>](F)`. Whitespace
// between tokens is ignored. Throws ParseError with a character offset.
Formula parse_formula(std::string_view text, LogicArity arity);
std::string to_string(const FormulaPtr& f);
bool same_formula(const FormulaPtr& a, const FormulaPtr& b);
std::size_t depth(const FormulaPtr& f);
std::vector<std::string> atoms_of(const FormulaPtr& f);
std::vector<std::string> relations_of(const FormulaPtr& f);

// Distinct subformulas, children before parents, root last.
struct SubformulaIndex {
  std::vector<FormulaPtr> items;
  // children[i] = positions of items[i]'s direct subformulas.
  std::vector<std::vector<std::size_t>> children;

  std::size_t size() const { return items.size(); }
};

SubformulaIndex index_subformulas(const FormulaPtr& root);

// Truth of the binary formula at every pair u * n + v. Throws LookupError for
// atoms that are not labels of g's pair coloring.
std::vector<bool> eval_rgfo3_table(const KnowledgeGraph& g, const Formula& phi);
bool eval_rgfo3(const KnowledgeGraph& g, const Formula& phi, NodeId u, NodeId v);

// Truth of the unary formula at every node.
std::vector<bool> eval_gml_table(const KnowledgeGraph& g, const Formula& phi);
bool eval_gml(const KnowledgeGraph& g, const Formula& phi, NodeId v);

Formula translate_gml_to_rgfo3(const Formula& phi);
Formula translate_rgfo3_to_gml(const Formula& phi);

// R-MPNN computing a unary formula: one layer per subformula position plus a
// final extraction layer; component l of h^(t) is the truth value of the l-th
// subformula for t >= l + 1.
struct CompiledClassifier {
  NetworkSpec spec;
  SubformulaIndex subformulas;
  std::vector<std::string> color_vocabulary;

  // One-hot encoding of the node color over atom positions.
  std::vector<Vector<double>> initial_features(const KnowledgeGraph& g) const;
  // Number of layers before the extraction layer (= number of subformulas).
  std::size_t formula_layers() const { return subformulas.size(); }
};

// Throws ValidationError for atoms outside `colors`. Relations of the formula
// missing from `relations` are appended to the network's vocabulary.
CompiledClassifier compile_gml_to_rmpnn(const Formula& phi, const std::vector<std::string>& colors,
                                        const std::vector<std::string>& relations);

// Runs the compiled classifier and returns the extraction-layer output per
// node; throws Error if any reachable value is not exactly 0 or 1.
std::vector<bool> run_classifier(const CompiledClassifier& c, const KnowledgeGraph& g);

// Translate, compile, run on product_square(g), re-index to pairs.
std::vector<bool> classify_pairs_via_compile(const Formula& phi, const KnowledgeGraph& g);

struct RandomFormulaConfig {
  std::size_t max_depth = 3;
  std::size_t max_count = 3;
};

FormulaPtr random_formula(std::mt19937_64& rng, const std::vector<std::string>& atoms,
                          const std::vector<std::string>& relations,
                          const RandomFormulaConfig& config = {});

}  // namespace relwl
