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
#include <vector>

#include "json.hpp"
#include "relwl/coloring.hpp"
#include "relwl/kg.hpp"
#include "relwl/matrix.hpp"
#include "relwl/network.hpp"

namespace relwl {

// Feature vectors per recorded layer. Arity 1 indexes nodes, arity 2 indexes
// pairs u * num_nodes + v.
template <typename S>
struct FeatureTable {
  std::size_t arity = 1;
  std::size_t num_nodes = 0;
  std::vector<std::vector<Vector<S>>> layers;  // layers[t][index]

  std::size_t num_layers() const { return layers.empty() ? 0 : layers.size() - 1; }
  const Vector<S>& at(std::size_t t, std::size_t index) const { return layers.at(t).at(index); }
};

// Partition of layer t induced by exact vector equality.
template <typename S>
Coloring partition_of(const FeatureTable<S>& table, std::size_t t);

// h_v^(t+1) = sigma(combine(h_v^(f(t)), agg{{ theta_r(h_w^(t)) | w in N_r(v) }})).
// S must be Rational for exact-rational specs and double for float64 specs.
// Graph relations are matched to spec relations by name.
template <typename S>
FeatureTable<S> rmpnn_forward(const KnowledgeGraph& g, const NetworkSpec& spec,
                              const std::vector<Vector<S>>& x);

// h_{v|u,q}^(t) for every target v, as an arity-1 table over targets.
template <typename S>
FeatureTable<S> cmpnn_row(const KnowledgeGraph& g, const NetworkSpec& spec, RelationId q,
                          NodeId u);

// All rows stacked into an arity-2 table.
template <typename S>
FeatureTable<S> cmpnn_table(const KnowledgeGraph& g, const NetworkSpec& spec, RelationId q);

// The initial pair features delta(u, ., q).
template <typename S>
std::vector<Vector<S>> initial_pair_features(const KnowledgeGraph& g, const NetworkSpec& spec,
                                             RelationId q, NodeId u);

struct LinkDecoder {
  Matrix<double> hidden_weight;  // hidden x d(T)
  Vector<double> hidden_bias;
  Vector<double> output_weight;  // hidden
  double output_bias = 0.0;
};

// p(v | u, q) = sigmoid(w2 . relu(W1 h_{v|u,q}^(T) + b1) + b2). Float specs only.
double score_link(const NetworkSpec& spec, const LinkDecoder& decoder, const KnowledgeGraph& g,
                  RelationId q, NodeId u, NodeId v);

template <typename S>
nlohmann::json table_to_json(const FeatureTable<S>& table);

}  // namespace relwl
