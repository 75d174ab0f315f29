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

#include "relwl/simulators.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "relwl/coloring.hpp"
#include "relwl/error.hpp"

namespace relwl {

Matrix<Rational> fts(std::size_t n) {
  Matrix<Rational> m(n, n, Rational(1));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m(i, j) = -1;
  return m;
}

SignMatrix build_sign_matrix(const Matrix<Rational>& b) {
  const std::size_t n = b.rows();
  const std::size_t p = b.cols();
  if (p > n) throw PreconditionError("sign matrix: more columns than rows");
  Rational m = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < p; ++k) {
      const Rational& e = b(i, k);
      if (e < 0 || e.get_den() != 1) {
        throw PreconditionError("sign matrix: entries must be non-negative integers");
      }
      m = std::max(m, e);
    }
  }
  // Base m + 1 keeps b = zB injective on {0..m}^n.
  Vector<Rational> z(n);
  Rational power = 1;
  for (std::size_t i = 0; i < n; ++i) {
    z[i] = power;
    power *= m + 1;
  }
  Vector<Rational> value(p, Rational(0));
  for (std::size_t k = 0; k < p; ++k)
    for (std::size_t i = 0; i < n; ++i) value[k] += z[i] * b(i, k);

  SignMatrix out;
  out.column_order.resize(p);
  std::iota(out.column_order.begin(), out.column_order.end(), std::size_t{0});
  std::sort(out.column_order.begin(), out.column_order.end(),
            [&](std::size_t a, std::size_t c) { return value[a] > value[c]; });
  for (std::size_t k = 0; k < p; ++k) {
    if (value[out.column_order[k]] == 0) throw PreconditionError("sign matrix: zero column");
    if (k > 0 && value[out.column_order[k]] == value[out.column_order[k - 1]]) {
      throw PreconditionError("sign matrix: duplicate columns");
    }
  }

  Vector<Rational> x(n, Rational(0));
  for (std::size_t j = 0; j < n; ++j) {
    if (j == 0) {
      x[j] = p == 0 ? Rational(1) : 1 / (value[out.column_order[0]] + 1);
    } else if (j < p) {
      x[j] = 2 / (value[out.column_order[j]] + value[out.column_order[j - 1]]);
    } else {
      x[j] = p == 0 ? Rational(1) : 2 / value[out.column_order[p - 1]];
    }
    x[j].canonicalize();
  }
  out.x = Matrix<Rational>(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) out.x(j, i) = x[j] * z[i];
  return out;
}

Rwl1Simulator build_rwl1_simulator(const KnowledgeGraph& g, std::size_t layers,
                                   const HistoryFunction& f) {
  const std::size_t n = g.num_nodes();
  const std::size_t num_rel = g.num_relations();
  const Matrix<Rational> f_ts = fts(n);
  const Matrix<Rational> m_inv = inverse(f_ts);

  Rwl1Simulator sim;
  NetworkSpec& spec = sim.spec;
  spec.kind = ModelKind::kRmpnn;
  spec.mode = NumericMode::kExactRational;
  spec.dims.assign(layers + 1, n);
  spec.relations = g.relation_names();
  spec.init = Initialization::kZero;
  spec.message = Message::kScaling;
  spec.aggregation = Aggregation::kSum;
  spec.activation = Activation::kSign;
  spec.update_form = UpdateForm::kShared;
  spec.history = f;
  spec.strict_sign = true;

  Vector<Rational> alpha(num_rel);
  Rational base = Rational(static_cast<long>(n) + 1);
  Rational power = base;
  for (std::size_t i = 0; i < num_rel; ++i) {
    alpha[i] = power;
    power *= base;
  }

  // Color index per node; H^(t) columns are Fts columns of these indices.
  std::vector<Coloring> colors;
  colors.push_back(canonical(g.node_coloring().ids));
  for (NodeId v = 0; v < n; ++v) sim.initial_features.push_back(f_ts.column(colors[0][v]));

  for (std::size_t t = 0; t < layers; ++t) {
    // E = M H^(f(t)) + sum_i alpha_i M H^(t) A_i, built directly from the
    // color indices since M maps Fts column c to e_c.
    const Coloring& own = colors[f(t)];
    const Coloring& cur = colors[t];
    Matrix<Rational> e(n, n);
    for (NodeId v = 0; v < n; ++v) {
      e(own[v], v) += 1;
      for (const InEdge& in : g.incoming(v)) e(cur[in.source], v) += alpha[in.relation];
    }
    std::map<Vector<Rational>, std::size_t> distinct;
    std::vector<std::size_t> column_of(n);
    std::vector<Vector<Rational>> unique;
    for (NodeId v = 0; v < n; ++v) {
      Vector<Rational> col = e.column(v);
      auto [it, inserted] = distinct.emplace(col, unique.size());
      if (inserted) unique.push_back(std::move(col));
      column_of[v] = it->second;
    }
    Matrix<Rational> b(n, unique.size());
    for (std::size_t k = 0; k < unique.size(); ++k) b.set_column(k, unique[k]);
    const SignMatrix sm = build_sign_matrix(b);
    std::vector<std::uint32_t> fts_index(unique.size());
    for (std::size_t k = 0; k < sm.column_order.size(); ++k) {
      fts_index[sm.column_order[k]] = static_cast<std::uint32_t>(k);
    }
    Coloring next(n);
    for (NodeId v = 0; v < n; ++v) next[v] = fts_index[column_of[v]];
    colors.push_back(std::move(next));

    LayerParams p;
    p.weight = sm.x * m_inv;
    p.bias = Vector<Rational>(n, Rational(-1));
    p.scaling = alpha;
    spec.layers.push_back(std::move(p));
  }
  spec.validate();
  return sim;
}

CmpnnSimulator build_cmpnn_simulator(const KnowledgeGraph& g, std::size_t layers,
                                     const HistoryFunction& f) {
  if (!g.pair_coloring()) throw PreconditionError("C-MPNN simulator needs a pair coloring");
  if (!g.pair_coloring()->target_node_distinguishable()) {
    throw PreconditionError("C-MPNN simulator needs target node distinguishability");
  }
  const std::size_t n = g.num_nodes();
  const KnowledgeGraph square = product_square(g);
  Rwl1Simulator inner = build_rwl1_simulator(square, layers, f);

  CmpnnSimulator out;
  out.num_nodes = n;
  out.spec = std::move(inner.spec);
  out.spec.kind = ModelKind::kCmpnn;
  out.spec.init = Initialization::kPairTable;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = 0; v < n; ++v) {
      out.spec.pair_table.emplace(g.pair_coloring()->label(u, v),
                                  inner.initial_features[u * n + v]);
    }
  }
  out.spec.validate();
  return out;
}

}  // namespace relwl
