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

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "oracle.hpp"
#include "relwl/coloring.hpp"
#include "relwl/corpus.hpp"
#include "relwl/error.hpp"
#include "relwl/forward.hpp"
#include "relwl/kg.hpp"
#include "relwl/network.hpp"
#include "relwl/simulators.hpp"
#include "relwl/wl.hpp"

namespace relwl {
namespace {

// (Fts)_{ij} = -1 iff j >= i, straight from the definition (1-based).
int fts_entry(std::size_t i, std::size_t j) { return j >= i ? -1 : 1; }

Rational q(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::vector<Vector<Rational>> uniform_features(std::size_t n, std::size_t d, const Rational& value) {
  return std::vector<Vector<Rational>>(n, Vector<Rational>(d, value));
}

NetworkSpec scaling_rmpnn(std::size_t num_rel, std::vector<std::size_t> dims) {
  NetworkSpec spec;
  spec.kind = ModelKind::kRmpnn;
  spec.mode = NumericMode::kExactRational;
  spec.message = Message::kScaling;
  spec.dims = dims;
  for (std::size_t r = 0; r < num_rel; ++r) {
    spec.relations.push_back(num_rel == 1 ? "r" : "r" + std::to_string(r));
  }
  for (std::size_t t = 0; t + 1 < dims.size(); ++t) {
    LayerParams p;
    p.weight = Matrix<Rational>(dims[t + 1], dims[t]);
    p.scaling.assign(num_rel, Rational(1));
    spec.layers.push_back(std::move(p));
  }
  return spec;
}

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-4, 4), den(1, 4);
  return q(num(rng), den(rng));
}

Matrix<Rational> random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c) {
  Matrix<Rational> m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = random_rational(rng);
  return m;
}

NetworkSpec random_cmpnn(std::mt19937_64& rng, const KnowledgeGraph& g, Initialization init,
                         Message message, const HistoryFunction& f, NumericMode mode,
                         std::size_t layers = 2, std::size_t d = 2) {
  NetworkSpec spec;
  spec.kind = ModelKind::kCmpnn;
  spec.mode = mode;
  spec.init = init;
  spec.message = message;
  spec.history = f;
  spec.activation = Activation::kRelu;
  spec.relations = g.relation_names();
  spec.dims.assign(layers + 1, d);
  for (std::size_t r = 0; r < g.num_relations(); ++r) {
    Vector<Rational> z(d);
    for (auto& x : z) x = random_rational(rng);
    z[0] = q(1);  // keep z_q != 0
    spec.query_vectors.push_back(z);
  }
  for (std::size_t t = 0; t < layers; ++t) {
    LayerParams p;
    p.weight = random_matrix(rng, d, d);
    for (std::size_t r = 0; r < g.num_relations(); ++r) {
      if (message == Message::kVector) p.relation_vectors.push_back(random_matrix(rng, d, 1).column(0));
      if (message == Message::kMatrix || message == Message::kQueryScaled) {
        p.relation_matrices.push_back(random_matrix(rng, d, d));
      }
      if (message == Message::kScaling) p.scaling.push_back(random_rational(rng));
    }
    spec.layers.push_back(std::move(p));
  }
  spec.validate();
  return spec;
}

TEST(Fts, MatchesDefinitionAndInverts) {
  for (std::size_t n = 1; n <= 7; ++n) {
    const Matrix<Rational> m = fts(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) EXPECT_EQ(m(i, j), fts_entry(i + 1, j + 1));
    EXPECT_EQ(m * inverse(m), Matrix<Rational>::Identity(n));
  }
  EXPECT_THROW(inverse(Matrix<Rational>(2, 2)), ValidationError);
}

TEST(SignMatrix, TwoByTwoIdentity) {
  const SignMatrix s = build_sign_matrix(Matrix<Rational>::Identity(2));
  Matrix<Rational> b(2, 2);
  for (std::size_t k = 0; k < 2; ++k) b.set_column(k, Matrix<Rational>::Identity(2).column(s.column_order[k]));
  const Matrix<Rational> pre = s.x * b;
  const int expected[2][2] = {{-1, -1}, {1, -1}};
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) EXPECT_EQ(pre(i, j) > 1 ? 1 : -1, expected[i][j]);
}

TEST(SignMatrix, SingleColumn) {
  Matrix<Rational> b(4, 1);
  b(2, 0) = 3;
  const SignMatrix s = build_sign_matrix(b);
  const Matrix<Rational> pre = s.x * b;
  EXPECT_LT(pre(0, 0), 1);
  for (std::size_t i = 1; i < 4; ++i) EXPECT_GT(pre(i, 0), 1);
}

TEST(SignMatrix, RandomMatricesGiveFtsPrefix) {
  std::mt19937_64 rng(1);
  int built = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng() % 6;
    const std::size_t p = 1 + rng() % n;
    const long m = 1 + static_cast<long>(rng() % 4);
    Matrix<Rational> b(n, p);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < p; ++k) b(i, k) = static_cast<long>(rng() % (m + 1));
    bool valid = true;
    for (std::size_t k = 0; k < p && valid; ++k) {
      if (b.column(k) == Vector<Rational>(n, Rational(0))) valid = false;
      for (std::size_t l = 0; l < k && valid; ++l) valid = b.column(k) != b.column(l);
    }
    if (!valid) {
      EXPECT_THROW(build_sign_matrix(b), PreconditionError);
      continue;
    }
    ++built;
    const SignMatrix s = build_sign_matrix(b);
    for (std::size_t k = 0; k < p; ++k) {
      const Vector<Rational> col = s.x * b.column(s.column_order[k]);
      for (std::size_t i = 0; i < n; ++i) {
        ASSERT_NE(col[i], 1);  // sign never evaluated at 0
        EXPECT_EQ(col[i] > 1 ? 1 : -1, fts_entry(i + 1, k + 1));
      }
    }
  }
  EXPECT_GT(built, 100);
}

TEST(SignMatrix, BaseMCollisionIsHandled) {
  // With base m = 1 these columns would both map to 2; base m + 1 separates them.
  Matrix<Rational> b(2, 2);
  b(0, 0) = 0; b(1, 0) = 1;
  b(0, 1) = 1; b(1, 1) = 1;
  EXPECT_NO_THROW(build_sign_matrix(b));
}

TEST(RmpnnForward, EdgelessGraph) {
  const KnowledgeGraph g({"a", "b"}, {"r"}, {});
  NetworkSpec spec = scaling_rmpnn(1, {2, 2});
  spec.activation = Activation::kRelu;
  spec.layers[0].weight(0, 0) = q(2);
  spec.layers[0].weight(0, 1) = q(-1);
  spec.layers[0].weight(1, 1) = q(1, 3);
  const std::vector<Vector<Rational>> x = {{q(1), q(5)}, {q(3), q(-1)}};
  const auto h = rmpnn_forward<Rational>(g, spec, x);
  EXPECT_EQ(h.at(1, 0), (Vector<Rational>{q(0), q(5, 3)}));
  EXPECT_EQ(h.at(1, 1), (Vector<Rational>{q(7), q(0)}));
}

TEST(RmpnnForward, GbSignStepMatchesRwl1) {
  const KnowledgeGraph g = fixture("gb").graph;  // u, u', v, x
  NetworkSpec spec = scaling_rmpnn(1, {1, 1});
  spec.activation = Activation::kSign;
  spec.layers[0].weight(0, 0) = q(1);
  spec.layers[0].scaling[0] = q(-3);
  const auto h = rmpnn_forward<Rational>(g, spec, uniform_features(4, 1, q(1)));
  EXPECT_TRUE(equivalent(partition_of(h, 1), Coloring{0, 1, 0, 0}));
}

TEST(RmpnnForward, DimensionMismatch) {
  const KnowledgeGraph g({"a"}, {"r"}, {});
  const NetworkSpec spec = scaling_rmpnn(1, {2, 2});
  EXPECT_THROW(rmpnn_forward<Rational>(g, spec, uniform_features(1, 3, q(1))), ValidationError);
  EXPECT_THROW(rmpnn_forward<double>(g, spec, {{1.0, 1.0}}), PreconditionError);
}

TEST(Rwl1Simulator, EdgelessUniformStaysOneClass) {
  const KnowledgeGraph g({"a", "b", "c"}, {"r"}, {});
  const Rwl1Simulator sim = build_rwl1_simulator(g, 3);
  const auto h = rmpnn_forward<Rational>(g, sim.spec, sim.initial_features);
  for (std::size_t t = 0; t <= 3; ++t) EXPECT_EQ(num_classes(partition_of(h, t)), 1u);
}

TEST(Rwl1Simulator, GbOneLayer) {
  const KnowledgeGraph g = fixture("gb").graph;
  const Rwl1Simulator sim = build_rwl1_simulator(g, 1);
  const auto h = rmpnn_forward<Rational>(g, sim.spec, sim.initial_features);
  EXPECT_TRUE(equivalent(partition_of(h, 1), Coloring{0, 1, 0, 0}));
  // Every feature is a column of Fts.
  const Matrix<Rational> m = fts(4);
  for (std::size_t t = 0; t <= 1; ++t) {
    for (NodeId v = 0; v < 4; ++v) {
      bool found = false;
      for (std::size_t j = 0; j < 4; ++j) found = found || h.at(t, v) == m.column(j);
      EXPECT_TRUE(found);
    }
  }
}

TEST(Rwl1Simulator, ParametersFollowTheConstruction) {
  const KnowledgeGraph g = random_kg(3, 5, 3, 0.4);
  const std::size_t n = g.num_nodes();
  const Rwl1Simulator sim = build_rwl1_simulator(g, 2);
  EXPECT_EQ(sim.spec.mode, NumericMode::kExactRational);
  EXPECT_EQ(sim.spec.activation, Activation::kSign);
  EXPECT_TRUE(sim.spec.strict_sign);
  for (const auto& layer : sim.spec.layers) {
    EXPECT_EQ(*layer.bias, Vector<Rational>(n, Rational(-1)));
    Rational power = 1;
    for (std::size_t i = 0; i < g.num_relations(); ++i) {
      power *= static_cast<long>(n) + 1;
      EXPECT_EQ(layer.scaling[i], power);
    }
  }
}

TEST(Rwl1Simulator, MatchesBruteForceRwl1) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    RandomGraphConfig config;
    config.n_max = 7;
    config.node_colors = 1 + seed % 3;
    const KnowledgeGraph g = random_kg(seed, config);
    for (const auto& f : {HistoryFunction::Identity(), HistoryFunction::Zero()}) {
      const Rwl1Simulator sim = build_rwl1_simulator(g, 4, f);
      const auto h = rmpnn_forward<Rational>(g, sim.spec, sim.initial_features);
      std::vector<std::size_t> table;
      for (std::size_t t = 0; t < 4; ++t) table.push_back(f(t));
      const auto expect = oracle::rwl1(g, 4, table);
      for (std::size_t t = 0; t <= 4; ++t) EXPECT_TRUE(oracle::same_partition(expect[t], partition_of(h, t)));
    }
  }
}

TEST(Rwl1Simulator, HistoryDoesNotChangePartitions) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const KnowledgeGraph g = random_kg(seed, 6, 2, 0.35);
    const auto a = build_rwl1_simulator(g, 3, HistoryFunction::Identity());
    const auto b = build_rwl1_simulator(g, 3, HistoryFunction::Zero());
    const auto ha = rmpnn_forward<Rational>(g, a.spec, a.initial_features);
    const auto hb = rmpnn_forward<Rational>(g, b.spec, b.initial_features);
    for (std::size_t t = 0; t <= 3; ++t) EXPECT_TRUE(equivalent(partition_of(ha, t), partition_of(hb, t)));
  }
}

TEST(CmpnnSimulator, GaNeverSeparates) {
  const KnowledgeGraph g = fixture("ga").graph;
  const CmpnnSimulator sim = build_cmpnn_simulator(g, 2);
  const auto h = cmpnn_table<Rational>(g, sim.spec, 0);
  const std::size_t n = g.num_nodes();
  const NodeId u = g.node("u"), v = g.node("v"), vp = g.node("v'");
  for (std::size_t t = 0; t <= 2; ++t) EXPECT_EQ(h.at(t, u * n + v), h.at(t, u * n + vp));
}

TEST(CmpnnSimulator, SingleNode) {
  KnowledgeGraph g({"a"}, {"r"}, {Fact{0, 0, 0}});
  g = g.with_pair_coloring(default_pair_coloring(g));
  const CmpnnSimulator sim = build_cmpnn_simulator(g, 2);
  const auto h = cmpnn_table<Rational>(g, sim.spec, 0);
  for (std::size_t t = 0; t <= 2; ++t) EXPECT_EQ(num_classes(partition_of(h, t)), 1u);
}

TEST(CmpnnSimulator, Preconditions) {
  const KnowledgeGraph g = parse_graph("a\tr\tb\n");
  EXPECT_THROW(build_cmpnn_simulator(g, 1), PreconditionError);
  EXPECT_THROW(build_cmpnn_simulator(g.with_pair_coloring(PairColoring::FromLabels(2, {"x", "x", "x", "x"})), 1),
               PreconditionError);
}

TEST(CmpnnSimulator, MatchesBruteForceRawl2) {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    RandomGraphConfig config;
    config.n_max = 5;
    config.pair_coloring = RandomPairColoring::kRandomDistinguishing;
    const KnowledgeGraph g = random_kg(seed, config);
    const CmpnnSimulator sim = build_cmpnn_simulator(g, 3);
    const auto h = cmpnn_table<Rational>(g, sim.spec, 0);
    const auto expect = oracle::pair_test(g, 3, false, false);
    for (std::size_t t = 0; t <= 3; ++t) EXPECT_TRUE(oracle::same_partition(expect[t], partition_of(h, t)));
  }
}

TEST(CmpnnForward, Delta2Initialization) {
  std::mt19937_64 rng(1);
  const KnowledgeGraph g = fixture("gb").graph;
  const NetworkSpec spec = random_cmpnn(rng, g, Initialization::kQuery, Message::kVector,
                                        HistoryFunction::Identity(), NumericMode::kExactRational);
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    const auto h0 = initial_pair_features<Rational>(g, spec, 0, u);
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
      EXPECT_EQ(h0[v], v == u ? spec.query_vectors[0] : Vector<Rational>(2, Rational(0)));
    }
  }
  EXPECT_TRUE(spec.target_node_distinguishable());
  EXPECT_TRUE(init_distinguishes_targets(spec, g, 0));
}

TEST(CmpnnForward, Delta0IsNotDistinguishing) {
  std::mt19937_64 rng(2);
  const KnowledgeGraph g = fixture("ga").graph;
  const NetworkSpec spec = random_cmpnn(rng, g, Initialization::kZero, Message::kMatrix,
                                        HistoryFunction::Identity(), NumericMode::kExactRational);
  EXPECT_FALSE(spec.target_node_distinguishable());
  const auto h = cmpnn_table<Rational>(g, spec, 0);
  EXPECT_EQ(num_classes(partition_of(h, 0)), 1u);
}

TEST(CmpnnForward, GaTheta1FeaturesCoincide) {
  const KnowledgeGraph g = fixture("ga").graph;
  const std::size_t n = g.num_nodes();
  const NodeId u = g.node("u"), v = g.node("v"), vp = g.node("v'");
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    std::mt19937_64 rng(seed);
    const NetworkSpec spec = random_cmpnn(rng, g, Initialization::kQuery, Message::kQueryScaled,
                                          HistoryFunction::Identity(), NumericMode::kExactRational);
    for (RelationId qr = 0; qr < g.num_relations(); ++qr) {
      const auto h = cmpnn_table<Rational>(g, spec, qr);
      for (std::size_t t = 0; t <= 2; ++t) EXPECT_EQ(h.at(t, u * n + v), h.at(t, u * n + vp));
    }
  }
}

TEST(CmpnnForward, UpperBoundAgainstBruteForceRawl2) {
  const Initialization inits[] = {Initialization::kOnes, Initialization::kQuery};
  const Message messages[] = {Message::kQueryScaled, Message::kVector, Message::kMatrix};
  for (std::uint64_t seed = 0; seed < 24; ++seed) {
    std::mt19937_64 rng(seed);
    RandomGraphConfig config;
    config.n_max = 5;
    config.pair_coloring = RandomPairColoring::kDiagonal;
    const KnowledgeGraph g = random_kg(seed, config);
    const HistoryFunction f = seed % 2 ? HistoryFunction::Zero() : HistoryFunction::Identity();
    const NetworkSpec spec = random_cmpnn(rng, g, inits[seed % 2], messages[seed % 3], f,
                                          NumericMode::kExactRational, 3);
    const auto h = cmpnn_table<Rational>(g, spec, 0);
    const WLTrace tr = run_test(TestId::kRawl2, g, f, Horizon::Iterations(3));
    for (std::size_t t = 0; t <= 3; ++t) EXPECT_TRUE(refines(tr.at(t), partition_of(h, t)));
  }
}

TEST(CmpnnForward, NoiseIsFixedPerNodeName) {
  std::mt19937_64 rng(8);
  RandomGraphConfig config;
  config.n_max = 5;
  config.n_min = 3;
  const KnowledgeGraph g = random_kg(4, config);
  NetworkSpec spec = random_cmpnn(rng, g, Initialization::kQueryNoise, Message::kMatrix,
                                  HistoryFunction::Identity(), NumericMode::kFloat64);
  spec.seed = 99;
  const std::size_t n = g.num_nodes();
  std::vector<NodeId> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::reverse(perm.begin(), perm.end());
  const KnowledgeGraph h = permute_nodes(g, perm);
  for (NodeId u = 0; u < n; ++u) {
    const auto a = cmpnn_row<double>(g, spec, 0, u);
    const auto b = cmpnn_row<double>(h, spec, 0, perm[u]);
    for (std::size_t t = 0; t <= spec.num_layers(); ++t)
      for (NodeId v = 0; v < n; ++v)
        for (std::size_t k = 0; k < a.at(t, v).size(); ++k)
          EXPECT_NEAR(a.at(t, v)[k], b.at(t, perm[v])[k], 1e-9);
  }
  const auto x = initial_pair_features<double>(g, spec, 0, 0);
  EXPECT_NE(x[0], Vector<double>(2, 0.0));
}

TEST(CmpnnForward, PnaFloatRunsAndIsEquivariant) {
  std::mt19937_64 rng(5);
  const KnowledgeGraph g = random_kg(12, 6, 2, 0.4);
  NetworkSpec spec = random_cmpnn(rng, g, Initialization::kOnes, Message::kMatrix,
                                  HistoryFunction::Identity(), NumericMode::kFloat64);
  spec.aggregation = Aggregation::kPna;
  for (auto& layer : spec.layers) layer.pna_projection = random_matrix(rng, 2, 24);
  ASSERT_NO_THROW(spec.validate());
  const std::size_t n = g.num_nodes();
  std::vector<NodeId> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  const KnowledgeGraph h = permute_nodes(g, perm);
  const auto a = cmpnn_table<double>(g, spec, 0);
  const auto b = cmpnn_table<double>(h, spec, 0);
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = 0; v < n; ++v)
      for (std::size_t k = 0; k < 2; ++k)
        EXPECT_NEAR(a.at(2, u * n + v)[k], b.at(2, perm[u] * n + perm[v])[k], 1e-9);
}

TEST(NetworkSpec, ValidationErrors) {
  std::mt19937_64 rng(3);
  const KnowledgeGraph g = fixture("ga").graph;
  NetworkSpec spec = random_cmpnn(rng, g, Initialization::kOnes, Message::kMatrix,
                                  HistoryFunction::Identity(), NumericMode::kExactRational);
  NetworkSpec pna = spec;
  pna.aggregation = Aggregation::kPna;
  EXPECT_THROW(pna.validate(), ValidationError);
  NetworkSpec noisy = spec;
  noisy.init = Initialization::kNoise;
  EXPECT_THROW(noisy.validate(), ValidationError);
  NetworkSpec unary = spec;
  unary.kind = ModelKind::kRmpnn;
  unary.message = Message::kQueryScaled;
  EXPECT_THROW(unary.validate(), ValidationError);
  NetworkSpec shapes = spec;
  shapes.layers[1].weight = Matrix<Rational>(3, 2);
  EXPECT_THROW(shapes.validate(), ValidationError);
  NetworkSpec rel = spec;
  rel.layers[0].relation_matrices.pop_back();
  EXPECT_THROW(rel.validate(), ValidationError);
}

TEST(NetworkSpec, StrictSignRejectsZero) {
  const KnowledgeGraph g({"a"}, {"r"}, {});
  NetworkSpec spec = scaling_rmpnn(1, {1, 1});
  spec.activation = Activation::kSign;
  spec.layers[0].weight(0, 0) = q(1);
  spec.layers[0].bias = Vector<Rational>{q(-1)};
  spec.strict_sign = true;
  EXPECT_THROW(rmpnn_forward<Rational>(g, spec, uniform_features(1, 1, q(1))), Error);
  spec.strict_sign = false;
  const auto h = rmpnn_forward<Rational>(g, spec, uniform_features(1, 1, q(1)));
  EXPECT_EQ(h.at(1, 0)[0], -1);
}

TEST(NetworkSpec, JsonRoundTrip) {
  const KnowledgeGraph g = fixture("gc").graph;
  const CmpnnSimulator sim = build_cmpnn_simulator(g, 2);
  const NetworkSpec back = network_from_json(nlohmann::json::parse(to_json(sim.spec).dump()));
  EXPECT_EQ(back, sim.spec);

  std::mt19937_64 rng(6);
  NetworkSpec fl = random_cmpnn(rng, g, Initialization::kQueryNoise, Message::kQueryScaled,
                                HistoryFunction::Table({0, 0, 1}), NumericMode::kFloat64);
  fl.seed = 1234567890123ull;
  // Float specs serialize doubles; one round trip reaches a fixed point.
  const nlohmann::json once = to_json(network_from_json(nlohmann::json::parse(to_json(fl).dump())));
  EXPECT_EQ(to_json(network_from_json(once)), once);
  EXPECT_EQ(once.at("seed"), fl.seed);
  EXPECT_THROW(network_from_json(nlohmann::json::parse("{\"kind\": \"rmpnn\"}")), ValidationError);
}

TEST(NetworkSpec, RationalJsonUsesStrings) {
  const Rational big("123456789012345678901234567891/7");
  const auto j = rational_to_json(big);
  EXPECT_EQ(j.at("num"), "123456789012345678901234567891");
  EXPECT_EQ(j.at("den"), "7");
  EXPECT_EQ(rational_from_json(j), big);
  EXPECT_THROW(rational_from_json(nlohmann::json{{"num", "1"}, {"den", "0"}}), ValidationError);
}

TEST(ScoreLink, ZeroDecoderGivesHalf) {
  std::mt19937_64 rng(7);
  const KnowledgeGraph g = fixture("ga").graph;
  const NetworkSpec spec = random_cmpnn(rng, g, Initialization::kQuery, Message::kVector,
                                        HistoryFunction::Identity(), NumericMode::kFloat64);
  LinkDecoder dec{Matrix<double>(3, 2), Vector<double>(3, 0.0), Vector<double>(3, 0.0), 0.0};
  for (NodeId u = 0; u < 3; ++u)
    for (NodeId v = 0; v < 3; ++v) EXPECT_DOUBLE_EQ(score_link(spec, dec, g, 0, u, v), 0.5);
}

TEST(ScoreLink, GaPairsScoreEqually) {
  const KnowledgeGraph g = fixture("ga").graph;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    std::mt19937_64 rng(seed);
    const NetworkSpec spec = random_cmpnn(rng, g, Initialization::kQuery, Message::kQueryScaled,
                                          HistoryFunction::Identity(), NumericMode::kFloat64);
    LinkDecoder dec{to_double(random_matrix(rng, 4, 2)), to_double(random_matrix(rng, 4, 1).column(0)),
                    to_double(random_matrix(rng, 4, 1).column(0)), 0.25};
    const double a = score_link(spec, dec, g, 1, g.node("u"), g.node("v"));
    const double b = score_link(spec, dec, g, 1, g.node("u"), g.node("v'"));
    EXPECT_EQ(a, b);
    EXPECT_GT(a, 0.0);
    EXPECT_LT(a, 1.0);
  }
}

TEST(ScoreLink, PermutationInvariant) {
  std::mt19937_64 rng(10);
  const KnowledgeGraph g = random_kg(5, 6, 2, 0.4);
  const NetworkSpec spec = random_cmpnn(rng, g, Initialization::kOnes, Message::kMatrix,
                                        HistoryFunction::Identity(), NumericMode::kFloat64);
  LinkDecoder dec{to_double(random_matrix(rng, 3, 2)), {0.1, -0.2, 0.3}, {1.0, -1.0, 0.5}, -0.1};
  const std::size_t n = g.num_nodes();
  std::vector<NodeId> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  const KnowledgeGraph h = permute_nodes(g, perm);
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = 0; v < n; ++v)
      EXPECT_NEAR(score_link(spec, dec, g, 0, u, v), score_link(spec, dec, h, 0, perm[u], perm[v]), 1e-12);
}

TEST(ScoreLink, ExactModeUnsupported) {
  std::mt19937_64 rng(7);
  const KnowledgeGraph g = fixture("ga").graph;
  const NetworkSpec spec = random_cmpnn(rng, g, Initialization::kQuery, Message::kVector,
                                        HistoryFunction::Identity(), NumericMode::kExactRational);
  LinkDecoder dec{Matrix<double>(1, 2), {0.0}, {0.0}, 0.0};
  EXPECT_THROW(score_link(spec, dec, g, 0, 0, 1), PreconditionError);
}

TEST(FeatureTable, JsonExport) {
  const KnowledgeGraph g = fixture("gb").graph;
  const Rwl1Simulator sim = build_rwl1_simulator(g, 1);
  const auto j = table_to_json(rmpnn_forward<Rational>(g, sim.spec, sim.initial_features));
  EXPECT_EQ(j.at("schema"), 1);
  EXPECT_EQ(j.at("layers").size(), 2u);
  EXPECT_EQ(j.at("layers")[0][0][0].at("num"), "-1");
}

}  // namespace
}  // namespace relwl
