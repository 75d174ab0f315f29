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

#include "relwl/verify.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <random>
#include <unordered_map>

#include "relwl/coloring.hpp"
#include "relwl/corpus.hpp"
#include "relwl/error.hpp"
#include "relwl/forward.hpp"
#include "relwl/kg.hpp"
#include "relwl/logic.hpp"
#include "relwl/network.hpp"
#include "relwl/simulators.hpp"
#include "relwl/unravel.hpp"

namespace relwl {
namespace {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Independent stream per (suite seed, check, instance).
std::uint64_t derive(std::uint64_t seed, std::uint64_t tag, std::uint64_t i) {
  return splitmix(splitmix(seed ^ splitmix(tag)) + i);
}

enum Tag : std::uint64_t {
  kTagReduction = 1,
  kTagHistory,
  kTagHierarchy,
  kTagRwl1Sim,
  kTagCmpnnSim,
  kTagUpper,
  kTagLogicGraphs,
  kTagLogicFormulas,
  kTagUnravel,
};

json graph_json(const KnowledgeGraph& g, std::uint64_t seed) {
  json out{{"graph_seed", seed},
           {"triples", format_triples(g)},
           {"node_colors", format_node_colors(g)}};
  if (g.pair_coloring()) out["pair_colors"] = format_pair_colors(g);
  return out;
}

json pair_json(const KnowledgeGraph& g, std::size_t index) {
  const std::size_t n = g.num_nodes();
  return json::array({g.node_name(static_cast<NodeId>(index / n)),
                      g.node_name(static_cast<NodeId>(index % n))});
}

// The first pair of indices on which `fine` fails to refine `coarse`.
std::optional<std::pair<std::size_t, std::size_t>> refinement_witness(const Coloring& fine,
                                                                      const Coloring& coarse) {
  std::unordered_map<std::uint32_t, std::size_t> seen;
  for (std::size_t i = 0; i < fine.size(); ++i) {
    auto [it, inserted] = seen.emplace(fine[i], i);
    if (!inserted && coarse[it->second] != coarse[i]) return std::make_pair(it->second, i);
  }
  return std::nullopt;
}

std::optional<std::pair<std::size_t, std::size_t>> equivalence_witness(const Coloring& a,
                                                                       const Coloring& b) {
  if (auto w = refinement_witness(a, b)) return w;
  return refinement_witness(b, a);
}

// Mixed corpus used by the reduction, history and hierarchy checks.
KnowledgeGraph corpus_graph(std::uint64_t seed, std::size_t i) {
  RandomGraphConfig config;
  config.n_max = 10;
  config.r_max = 3;
  config.density = 0.3;
  config.node_colors = 1 + i % 3;
  switch (i % 3) {
    case 0:
      config.pair_coloring = RandomPairColoring::kDiagonal;
      break;
    case 1:
      config.pair_coloring = RandomPairColoring::kColoredDiagonal;
      break;
    default:
      config.pair_coloring = RandomPairColoring::kRandomDistinguishing;
      break;
  }
  return random_kg(seed, config);
}

class Timer {
 public:
  Timer() : start_(Clock::now()) {}
  double seconds() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }

 private:
  Clock::time_point start_;
};

CheckResult finish(CheckResult r, const Timer& timer) {
  r.seconds = timer.seconds();
  if (r.passed && r.detail.empty()) r.detail = std::to_string(r.cases) + " cases";
  return r;
}

void fail(CheckResult& r, std::string detail, json witness) {
  if (!r.passed) return;  // keep the first witness
  r.passed = false;
  r.detail = std::move(detail);
  r.witness = std::move(witness);
}

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-3, 3), den(1, 3);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

Vector<Rational> random_vector(std::mt19937_64& rng, std::size_t d, bool nonzero = false) {
  Vector<Rational> v(d);
  do {
    for (auto& x : v) x = random_rational(rng);
  } while (nonzero && std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; }));
  return v;
}

Matrix<Rational> random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  Matrix<Rational> m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = random_rational(rng);
  return m;
}

NetworkSpec random_exact_cmpnn(std::mt19937_64& rng, const KnowledgeGraph& g,
                               const HistoryFunction& f) {
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  NetworkSpec spec;
  spec.kind = ModelKind::kCmpnn;
  spec.mode = NumericMode::kExactRational;
  spec.relations = g.relation_names();
  spec.history = f;
  spec.aggregation = Aggregation::kSum;
  spec.update_form = UpdateForm::kShared;
  spec.init = pick(2) == 0 ? Initialization::kOnes : Initialization::kQuery;
  const Message messages[] = {Message::kQueryScaled, Message::kVector, Message::kMatrix};
  spec.message = messages[pick(3)];
  const Activation activations[] = {Activation::kRelu, Activation::kSign, Activation::kIdentity,
                                    Activation::kTruncatedRelu};
  spec.activation = activations[pick(4)];
  const std::size_t d = 1 + pick(3);
  const std::size_t layers = 1 + pick(3);
  spec.dims.assign(layers + 1, d);
  const std::size_t z_dim = spec.init == Initialization::kQuery ? d : 1 + pick(2);
  if (spec.init == Initialization::kQuery || spec.message == Message::kQueryScaled) {
    for (std::size_t r = 0; r < g.num_relations(); ++r) {
      spec.query_vectors.push_back(random_vector(rng, z_dim, true));
    }
  }
  const bool use_bias = pick(2) == 0;
  for (std::size_t t = 0; t < layers; ++t) {
    LayerParams p;
    p.weight = random_matrix(rng, d, d);
    if (use_bias) p.bias = random_vector(rng, d);
    for (std::size_t r = 0; r < g.num_relations(); ++r) {
      switch (spec.message) {
        case Message::kQueryScaled:
          p.relation_matrices.push_back(random_matrix(rng, d, z_dim));
          break;
        case Message::kVector:
          p.relation_vectors.push_back(random_vector(rng, d));
          break;
        case Message::kMatrix:
          p.relation_matrices.push_back(random_matrix(rng, d, d));
          break;
        case Message::kScaling:
          break;
      }
    }
    spec.layers.push_back(std::move(p));
  }
  spec.validate();
  return spec;
}

constexpr const char* kBinaryAtoms[] = {"d0", "d1", "o0", "o1"};
constexpr const char* kUnaryAtoms[] = {"c0", "c1", "c2"};

std::vector<KnowledgeGraph> logic_graphs(std::uint64_t seed, std::size_t count) {
  std::vector<KnowledgeGraph> out;
  for (std::size_t j = 0; j < count; ++j) {
    RandomGraphConfig config;
    config.n_max = 8;
    config.r_max = 3;
    config.density = 0.3;
    config.node_colors = 3;
    config.pair_coloring = RandomPairColoring::kRandomDistinguishing;
    config.pair_colors = 2;
    out.push_back(random_kg(derive(seed, kTagLogicGraphs, j), config));
  }
  return out;
}

std::vector<FormulaPtr> logic_formulas(std::uint64_t seed, std::size_t count, bool binary_atoms,
                                       std::uint64_t salt) {
  std::mt19937_64 rng(derive(seed, kTagLogicFormulas, salt));
  std::vector<std::string> atoms = binary_atoms
                                       ? std::vector<std::string>(std::begin(kBinaryAtoms), std::end(kBinaryAtoms))
                                       : std::vector<std::string>(std::begin(kUnaryAtoms), std::end(kUnaryAtoms));
  const std::vector<std::string> relations = {"r0", "r1", "r2"};
  std::vector<FormulaPtr> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_formula(rng, atoms, relations));
  return out;
}

}  // namespace

void TraceAudit::record(const WLTrace& trace, const json& context) {
  ++traces_;
  if (failed_) return;
  if (auto t = monotonicity_violation(trace)) {
    failed_ = true;
    witness_ = context;
    witness_["test"] = to_string(trace.test);
    witness_["iteration"] = *t;
  }
}

CheckResult TraceAudit::result() const {
  CheckResult r;
  r.name = "monotonicity";
  r.cases = traces_;
  r.passed = !failed_;
  r.detail = failed_ ? "coloring at t+1 does not refine t" : std::to_string(traces_) + " traces";
  if (failed_) r.witness = witness_;
  return r;
}

CheckResult check_reduction(std::uint64_t seed, std::size_t graphs, TraceAudit& audit) {
  Timer timer;
  CheckResult r;
  r.name = "reduction";
  constexpr std::size_t kT = 4;
  for (std::size_t i = 0; i < graphs; ++i) {
    const std::uint64_t gs = derive(seed, kTagReduction, i);
    const KnowledgeGraph g = corpus_graph(gs, i);
    const WLTrace pairs = run_test(TestId::kRawl2, g, HistoryFunction::Identity(), Horizon::Iterations(kT));
    const WLTrace square = run_test(TestId::kRwl1, product_square(g), HistoryFunction::Identity(),
                                    Horizon::Iterations(kT), RunOptions{false, 4096});
    audit.record(pairs, graph_json(g, gs));
    audit.record(square, graph_json(g, gs));
    ++r.cases;
    for (std::size_t t = 0; t <= kT; ++t) {
      if (auto w = equivalence_witness(pairs.at(t), square.at(t))) {
        fail(r, "rawl2 on G and rwl1 on G^2 differ",
             json{{"graph", graph_json(g, gs)},
                  {"iteration", t},
                  {"pairs", json::array({pair_json(g, w->first), pair_json(g, w->second)})}});
        break;
      }
    }
  }
  return finish(std::move(r), timer);
}

CheckResult check_history(std::uint64_t seed, std::size_t graphs, TraceAudit& audit) {
  Timer timer;
  CheckResult r;
  r.name = "history";
  constexpr std::size_t kT = 5;
  for (std::size_t i = 0; i < graphs; ++i) {
    const std::uint64_t gs = derive(seed, kTagHistory, i);
    const KnowledgeGraph g = corpus_graph(gs, i);
    std::mt19937_64 rng(gs);
    const HistoryFunction fs[] = {HistoryFunction::Identity(), HistoryFunction::Zero(),
                                  HistoryFunction::RandomTable(kT + 1, rng)};
    std::vector<WLTrace> traces;
    for (const auto& f : fs) {
      traces.push_back(run_test(TestId::kRwl1, g, f, Horizon::Iterations(kT)));
      audit.record(traces.back(), graph_json(g, gs));
    }
    ++r.cases;
    for (std::size_t k = 1; k < traces.size() && r.passed; ++k) {
      for (std::size_t t = 0; t <= kT; ++t) {
        if (auto w = equivalence_witness(traces[0].at(t), traces[k].at(t))) {
          fail(r, "rwl1 partitions depend on the history function",
               json{{"graph", graph_json(g, gs)},
                    {"history", fs[k].describe()},
                    {"iteration", t},
                    {"nodes", json::array({g.node_name(static_cast<NodeId>(w->first)),
                                           g.node_name(static_cast<NodeId>(w->second))})}});
          break;
        }
      }
    }
  }
  return finish(std::move(r), timer);
}

CheckResult check_hierarchy(std::uint64_t seed, std::size_t graphs, TraceAudit& audit) {
  Timer timer;
  CheckResult r;
  r.name = "hierarchy";
  // (finer, coarser) pairs of tests.
  const std::pair<TestId, TestId> edges[] = {{TestId::kRwl2Plus, TestId::kRwl2},
                                             {TestId::kRwl2, TestId::kRawl2},
                                             {TestId::kRwl2Plus, TestId::kRawl2Plus},
                                             {TestId::kRawl2Plus, TestId::kRawl2}};
  for (std::size_t i = 0; i < graphs; ++i) {
    const std::uint64_t gs = derive(seed, kTagHierarchy, i);
    const KnowledgeGraph g = corpus_graph(gs, i);
    std::map<TestId, WLTrace> traces;
    for (TestId id : {TestId::kRawl2, TestId::kRwl2, TestId::kRawl2Plus, TestId::kRwl2Plus}) {
      traces.emplace(id, run_test(id, g, HistoryFunction::Identity(), Horizon::Stabilize()));
      audit.record(traces.at(id), graph_json(g, gs));
    }
    std::size_t horizon = 0;
    for (const auto& [id, tr] : traces) horizon = std::max(horizon, tr.iterations());
    ++r.cases;
    for (const auto& [fine, coarse] : edges) {
      for (std::size_t t = 0; t <= horizon && r.passed; ++t) {
        if (auto w = refinement_witness(traces.at(fine).at(t), traces.at(coarse).at(t))) {
          fail(r, std::string(to_string(fine)) + " does not refine " + std::string(to_string(coarse)),
               json{{"graph", graph_json(g, gs)},
                    {"iteration", t},
                    {"pairs", json::array({pair_json(g, w->first), pair_json(g, w->second)})}});
        }
      }
    }
  }
  return finish(std::move(r), timer);
}

CheckResult check_rwl1_simulation(std::uint64_t seed, std::size_t graphs, TraceAudit& audit) {
  Timer timer;
  CheckResult r;
  r.name = "rwl1-simulation";
  constexpr std::size_t kT = 4;
  for (std::size_t i = 0; i < graphs; ++i) {
    const std::uint64_t gs = derive(seed, kTagRwl1Sim, i);
    RandomGraphConfig config;
    config.n_max = 7;
    config.r_max = 3;
    config.density = 0.3;
    config.node_colors = 1 + i % 3;
    const KnowledgeGraph g = random_kg(gs, config);
    for (const auto& f : {HistoryFunction::Identity(), HistoryFunction::Zero()}) {
      ++r.cases;
      const WLTrace trace = run_test(TestId::kRwl1, g, f, Horizon::Iterations(kT));
      audit.record(trace, graph_json(g, gs));
      try {
        const Rwl1Simulator sim = build_rwl1_simulator(g, kT, f);
        const FeatureTable<Rational> h = rmpnn_forward<Rational>(g, sim.spec, sim.initial_features);
        for (std::size_t t = 0; t <= kT; ++t) {
          if (auto w = equivalence_witness(partition_of(h, t), trace.at(t))) {
            fail(r, "simulator partition differs from rwl1",
                 json{{"graph", graph_json(g, gs)},
                      {"history", f.describe()},
                      {"iteration", t},
                      {"nodes", json::array({g.node_name(static_cast<NodeId>(w->first)),
                                             g.node_name(static_cast<NodeId>(w->second))})}});
            break;
          }
        }
      } catch (const Error& e) {
        fail(r, e.what(), json{{"graph", graph_json(g, gs)}, {"history", f.describe()}});
      }
    }
  }
  return finish(std::move(r), timer);
}

CheckResult check_cmpnn_simulation(std::uint64_t seed, std::size_t graphs, TraceAudit& audit) {
  Timer timer;
  CheckResult r;
  r.name = "cmpnn-simulation";
  constexpr std::size_t kT = 3;
  for (std::size_t i = 0; i < graphs; ++i) {
    const std::uint64_t gs = derive(seed, kTagCmpnnSim, i);
    RandomGraphConfig config;
    config.n_max = 5;
    config.r_max = 3;
    config.density = 0.3;
    config.node_colors = 2;
    config.pair_coloring = i % 2 == 0 ? RandomPairColoring::kDiagonal
                                      : RandomPairColoring::kRandomDistinguishing;
    const KnowledgeGraph g = random_kg(gs, config);
    const HistoryFunction f = i % 4 < 2 ? HistoryFunction::Identity() : HistoryFunction::Zero();
    ++r.cases;
    const WLTrace trace = run_test(TestId::kRawl2, g, f, Horizon::Iterations(kT));
    audit.record(trace, graph_json(g, gs));
    try {
      const CmpnnSimulator sim = build_cmpnn_simulator(g, kT, f);
      const FeatureTable<Rational> h = cmpnn_table<Rational>(g, sim.spec, 0);
      for (std::size_t t = 0; t <= kT; ++t) {
        if (auto w = equivalence_witness(partition_of(h, t), trace.at(t))) {
          fail(r, "C-MPNN simulator partition differs from rawl2",
               json{{"graph", graph_json(g, gs)},
                    {"history", f.describe()},
                    {"iteration", t},
                    {"pairs", json::array({pair_json(g, w->first), pair_json(g, w->second)})}});
          break;
        }
      }
    } catch (const Error& e) {
      fail(r, e.what(), json{{"graph", graph_json(g, gs)}});
    }
  }
  return finish(std::move(r), timer);
}

CheckResult check_upper_bound(std::uint64_t seed, std::size_t networks, TraceAudit& audit) {
  Timer timer;
  CheckResult r;
  r.name = "upper-bound";
  for (std::size_t i = 0; i < networks; ++i) {
    const std::uint64_t gs = derive(seed, kTagUpper, i);
    std::mt19937_64 rng(gs);
    RandomGraphConfig config;
    config.n_max = 6;
    config.r_max = 3;
    config.density = 0.3;
    config.pair_coloring = RandomPairColoring::kDiagonal;
    const KnowledgeGraph g = random_kg(gs, config);
    const HistoryFunction f = i % 2 == 0 ? HistoryFunction::Identity() : HistoryFunction::Zero();
    const NetworkSpec spec = random_exact_cmpnn(rng, g, f);
    const RelationId q = static_cast<RelationId>(
        std::uniform_int_distribution<std::size_t>(0, g.num_relations() - 1)(rng));
    ++r.cases;
    const WLTrace trace = run_test(TestId::kRawl2, g, f, Horizon::Iterations(spec.num_layers()));
    audit.record(trace, graph_json(g, gs));
    const FeatureTable<Rational> h = cmpnn_table<Rational>(g, spec, q);
    for (std::size_t t = 0; t <= spec.num_layers(); ++t) {
      if (auto w = refinement_witness(trace.at(t), partition_of(h, t))) {
        fail(r, "pairs with equal rawl2 colors have different C-MPNN features",
             json{{"graph", graph_json(g, gs)},
                  {"network", to_json(spec)},
                  {"query", g.relation_name(q)},
                  {"iteration", t},
                  {"pairs", json::array({pair_json(g, w->first), pair_json(g, w->second)})}});
        break;
      }
    }
  }
  return finish(std::move(r), timer);
}

CheckResult check_fixtures(TraceAudit& audit) {
  Timer timer;
  CheckResult r;
  r.name = "fixtures";
  for (const auto& name : fixture_names()) {
    const Fixture fx = fixture(name);
    for (const Claim& c : fx.claims) {
      audit.record(run_test(c.test, fx.graph), json{{"fixture", name}});
    }
    for (const ClaimResult& cr : check_claims(fx)) {
      ++r.cases;
      if (!cr.passed()) {
        fail(r, "fixture claim failed: " + describe(cr.claim),
             json{{"fixture", name}, {"claim", describe(cr.claim)}, {"observed", describe(cr.observed)}});
      }
    }
  }
  return finish(std::move(r), timer);
}

CheckResult check_logic_translations(std::uint64_t seed, std::size_t formulas, std::size_t graphs) {
  Timer timer;
  CheckResult r;
  r.name = "logic-translations";
  const auto gs = logic_graphs(seed, graphs);
  const auto unary = logic_formulas(seed, formulas, true, 0);
  const auto binary = logic_formulas(seed, formulas, true, 1);
  for (std::size_t j = 0; j < gs.size(); ++j) {
    const KnowledgeGraph& g = gs[j];
    const KnowledgeGraph square = product_square(g);
    for (std::size_t i = 0; i < formulas && r.passed; ++i) {
      ++r.cases;
      const Formula phi{LogicArity::kUnary, unary[i]};
      const std::vector<bool> lhs = eval_gml_table(square, phi);
      const std::vector<bool> rhs = eval_rgfo3_table(g, translate_gml_to_rgfo3(phi));
      const Formula psi{LogicArity::kBinary, binary[i]};
      const std::vector<bool> lhs2 = eval_rgfo3_table(g, psi);
      const std::vector<bool> rhs2 = eval_gml_table(square, translate_rgfo3_to_gml(psi));
      for (std::size_t p = 0; p < lhs.size(); ++p) {
        if (lhs[p] != rhs[p] || lhs2[p] != rhs2[p]) {
          const bool first = lhs[p] != rhs[p];
          fail(r, first ? "graded modal formula on G^2 disagrees with its translation on G"
                        : "binary formula on G disagrees with its translation on G^2",
               json{{"graph", graph_json(g, derive(seed, kTagLogicGraphs, j))},
                    {"formula", to_string(first ? unary[i] : binary[i])},
                    {"pair", pair_json(g, p)}});
          break;
        }
      }
    }
  }
  return finish(std::move(r), timer);
}

CheckResult check_compilation(std::uint64_t seed, std::size_t formulas, std::size_t graphs) {
  Timer timer;
  CheckResult r;
  r.name = "compilation";
  const auto gs = logic_graphs(seed, graphs);
  const auto unary = logic_formulas(seed, formulas, false, 2);
  const std::vector<std::string> colors(std::begin(kUnaryAtoms), std::end(kUnaryAtoms));
  const std::vector<std::string> relations = {"r0", "r1", "r2"};
  for (std::size_t i = 0; i < formulas && r.passed; ++i) {
    const Formula phi{LogicArity::kUnary, unary[i]};
    const CompiledClassifier c = compile_gml_to_rmpnn(phi, colors, relations);
    const std::size_t width = c.formula_layers();
    for (std::size_t j = 0; j < gs.size() && r.passed; ++j) {
      const KnowledgeGraph& g = gs[j];
      ++r.cases;
      const FeatureTable<double> h = rmpnn_forward<double>(g, c.spec, c.initial_features(g));
      json where{{"graph", graph_json(g, derive(seed, kTagLogicGraphs, j))},
                 {"formula", to_string(unary[i])}};
      for (std::size_t l = 0; l < width && r.passed; ++l) {
        const std::vector<bool> truth =
            eval_gml_table(g, Formula{LogicArity::kUnary, c.subformulas.items[l]});
        for (std::size_t t = l + 1; t <= width && r.passed; ++t) {
          for (NodeId v = 0; v < g.num_nodes(); ++v) {
            const double got = h.at(t, v)[l];
            if (got != (truth[v] ? 1.0 : 0.0)) {
              where["subformula"] = to_string(c.subformulas.items[l]);
              where["component"] = l;
              where["iteration"] = t;
              where["node"] = g.node_name(v);
              where["value"] = got;
              fail(r, "compiled feature differs from the subformula's truth value", where);
              break;
            }
          }
        }
      }
      const std::vector<bool> root = eval_gml_table(g, phi);
      for (NodeId v = 0; v < g.num_nodes() && r.passed; ++v) {
        if (h.at(width + 1, v)[0] != (root[v] ? 1.0 : 0.0)) {
          where["node"] = g.node_name(v);
          fail(r, "extraction layer differs from the formula's truth value", where);
        }
      }
    }
  }
  return finish(std::move(r), timer);
}

CheckResult check_classify_via_compile(std::uint64_t seed, std::size_t formulas,
                                       std::size_t graphs) {
  Timer timer;
  CheckResult r;
  r.name = "classify-via-compile";
  const auto gs = logic_graphs(seed, graphs);
  const auto binary = logic_formulas(seed, formulas, true, 3);
  for (std::size_t j = 0; j < gs.size(); ++j) {
    const KnowledgeGraph& g = gs[j];
    for (std::size_t i = 0; i < formulas && r.passed; ++i) {
      ++r.cases;
      const Formula phi{LogicArity::kBinary, binary[i]};
      json where{{"graph", graph_json(g, derive(seed, kTagLogicGraphs, j))},
                 {"formula", to_string(binary[i])}};
      try {
        const std::vector<bool> direct = eval_rgfo3_table(g, phi);
        const std::vector<bool> compiled = classify_pairs_via_compile(phi, g);
        for (std::size_t p = 0; p < direct.size(); ++p) {
          if (direct[p] != compiled[p]) {
            where["pair"] = pair_json(g, p);
            fail(r, "compiled classifier on G^2 disagrees with direct evaluation", where);
            break;
          }
        }
      } catch (const Error& e) {
        fail(r, e.what(), where);
      }
    }
  }
  return finish(std::move(r), timer);
}

CheckResult check_unravelling(std::uint64_t seed, std::size_t graphs, std::size_t node_budget,
                              TraceAudit& audit) {
  Timer timer;
  CheckResult r;
  r.name = "unravelling";
  constexpr std::size_t kMaxDepth = 3;
  std::size_t skipped = 0;
  for (std::size_t i = 0; i < graphs; ++i) {
    const std::uint64_t gs = derive(seed, kTagUnravel, i);
    RandomGraphConfig config;
    config.n_max = 6;
    config.r_max = 3;
    config.density = 0.15;
    config.node_colors = 1 + i % 3;
    const KnowledgeGraph g = random_kg(gs, config);
    const WLTrace trace = run_test(TestId::kRwl1, g, HistoryFunction::Identity(),
                                   Horizon::Iterations(kMaxDepth));
    audit.record(trace, graph_json(g, gs));
    ++r.cases;
    try {
      for (std::size_t depth = 0; depth <= kMaxDepth && r.passed; ++depth) {
        std::vector<std::string> codes;
        for (NodeId v = 0; v < g.num_nodes(); ++v) {
          codes.push_back(canonical_tree_code(unravel(g, v, depth, node_budget)));
        }
        const Coloring& colors = trace.at(depth);
        for (NodeId a = 0; a < g.num_nodes() && r.passed; ++a) {
          for (NodeId b = a + 1; b < g.num_nodes(); ++b) {
            if ((codes[a] == codes[b]) != (colors[a] == colors[b])) {
              fail(r, "unravelling isomorphism disagrees with rwl1",
                   json{{"graph", graph_json(g, gs)},
                        {"depth", depth},
                        {"nodes", json::array({g.node_name(a), g.node_name(b)})}});
              break;
            }
          }
        }
      }
    } catch (const BudgetExceeded&) {
      ++skipped;
    }
  }
  if (r.passed) {
    r.detail = std::to_string(r.cases - skipped) + " graphs compared, " + std::to_string(skipped) +
               " over the node budget";
  }
  return finish(std::move(r), timer);
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"reduction", "history",  "hierarchy", "simulation",
                                                 "logic",     "fixtures", "all"};
  return names;
}

std::vector<CheckResult> run_suite(std::string_view suite, const VerifyOptions& options) {
  const std::uint64_t seed = options.seed;
  auto count = [&](std::size_t fallback) { return options.trials.value_or(fallback); };
  const bool all = suite == "all";
  if (!all && std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end()) {
    throw ValidationError("unknown suite '" + std::string(suite) + "'");
  }
  TraceAudit audit;
  std::vector<CheckResult> out;
  bool traced = false;
  if (all || suite == "reduction") {
    out.push_back(check_reduction(seed, count(kReductionGraphs), audit));
    traced = true;
  }
  if (all || suite == "history") {
    out.push_back(check_history(seed, count(kHistoryGraphs), audit));
    traced = true;
  }
  if (all || suite == "simulation") {
    out.push_back(check_rwl1_simulation(seed, count(kRwl1SimulationGraphs), audit));
    out.push_back(check_cmpnn_simulation(seed, count(kCmpnnSimulationGraphs), audit));
    out.push_back(check_upper_bound(seed, count(kUpperBoundNetworks), audit));
    traced = true;
  }
  if (all || suite == "fixtures") {
    out.push_back(check_fixtures(audit));
    traced = true;
  }
  if (all || suite == "hierarchy") {
    out.push_back(check_hierarchy(seed, count(kHierarchyGraphs), audit));
    traced = true;
  }
  if (all || suite == "logic") {
    out.push_back(check_logic_translations(seed, count(kLogicFormulas), kLogicGraphs));
    out.push_back(check_compilation(seed, count(kLogicFormulas), kLogicGraphs));
    out.push_back(check_classify_via_compile(seed, count(kLogicFormulas), kLogicGraphs));
    out.push_back(check_unravelling(seed, count(kUnravellingGraphs), options.node_budget, audit));
    traced = true;
  }
  if (traced) out.push_back(audit.result());
  return out;
}

json make_report(const std::string& command, const VerifyOptions& options,
                 const std::vector<CheckResult>& checks) {
  json list = json::array();
  json timings = json::object();
  bool passed = true;
  for (const CheckResult& c : checks) {
    passed = passed && c.passed;
    json entry{{"name", c.name}, {"passed", c.passed}, {"cases", c.cases}, {"detail", c.detail}};
    entry["witness"] = c.passed ? json() : c.witness;
    list.push_back(std::move(entry));
    timings[c.name] = c.seconds;
  }
  return json{{"schema", 1},
              {"command", command},
              {"seed", options.seed},
              {"trials", options.trials ? json(*options.trials) : json()},
              {"passed", passed},
              {"checks", std::move(list)},
              {"timings", std::move(timings)}};
}

}  // namespace relwl
