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
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "relwl/history.hpp"
#include "relwl/kg.hpp"
#include "relwl/matrix.hpp"

namespace relwl {

enum class ModelKind { kRmpnn, kCmpnn };

// delta: initial pair features of a C-MPNN.
enum class Initialization {
  kZero,        // delta_0 = 0
  kOnes,        // delta_1 = 1_{u=v} * 1
  kQuery,       // delta_2 = 1_{u=v} * z_q
  kQueryNoise,  // delta_3 = 1_{u=v} * (z_q + eps_u)
  kNoise,       // delta_4 = 1_{u=v} * eps_q
  kPairTable,   // delta(u, v, q) = table[eta(u, v)]
};

// theta_r: relation-specific message functions.
enum class Message {
  kQueryScaled,  // theta^1 = h * (W_r z_q)
  kVector,       // theta^2 = h * b_r
  kMatrix,       // theta^3 = W_r h
  kScaling,      // alpha_r h
};

enum class Aggregation { kSum, kPna };
enum class Activation { kSign, kRelu, kTruncatedRelu, kIdentity };

// kShared: h' = sigma(W (h_self + agg) + bias)
// kSplit:  h' = sigma(W h_self + agg + bias)
enum class UpdateForm { kShared, kSplit };

enum class NumericMode { kFloat64, kExactRational };

std::string_view to_string(ModelKind v);
std::string_view to_string(Initialization v);
std::string_view to_string(Message v);
std::string_view to_string(Aggregation v);
std::string_view to_string(Activation v);
std::string_view to_string(UpdateForm v);
std::string_view to_string(NumericMode v);

// Parameters of the step from layer t to t + 1. Per-relation containers are
// indexed like NetworkSpec::relations and only the one matching the message
// kind is populated.
struct LayerParams {
  Matrix<Rational> weight;                     // W^(t)
  std::optional<Vector<Rational>> bias;        // d(t+1)
  Vector<Rational> scaling;                    // alpha_r
  std::vector<Vector<Rational>> relation_vectors;   // b_r
  std::vector<Matrix<Rational>> relation_matrices;  // W_r
  std::optional<Matrix<Rational>> pna_projection;   // message width x 12 d(t)

  bool operator==(const LayerParams&) const = default;
};

struct NetworkSpec {
  ModelKind kind = ModelKind::kRmpnn;
  std::vector<std::size_t> dims;  // d(0), ..., d(T)
  std::vector<LayerParams> layers;
  std::vector<std::string> relations;
  std::vector<Vector<Rational>> query_vectors;  // z_q per relation
  std::map<std::string, Vector<Rational>> pair_table;
  Initialization init = Initialization::kQuery;
  Message message = Message::kScaling;
  Aggregation aggregation = Aggregation::kSum;
  Activation activation = Activation::kRelu;
  UpdateForm update_form = UpdateForm::kShared;
  HistoryFunction history;
  NumericMode mode = NumericMode::kExactRational;
  std::uint64_t seed = 0;
  // Constructive networks assert that sign is never applied at 0.
  bool strict_sign = false;

  std::size_t num_layers() const { return layers.size(); }
  // Width of the messages entering layer t's combination.
  std::size_t message_width(std::size_t t) const;
  // Throws ValidationError on any inconsistency.
  void validate() const;
  // Target node distinguishability of delta, where decidable from the parameters
  // alone (delta_1, delta_2 with every z_q != 0, delta_3, delta_4 are treated
  // as distinguishing; delta_0 is not). Pair-table networks answer per graph via
  // init_distinguishes_targets.
  bool target_node_distinguishable() const;

  bool operator==(const NetworkSpec&) const = default;
};

// Exact check of delta(u, u, q) != delta(u, v, q) for all u != v on g.
bool init_distinguishes_targets(const NetworkSpec& spec, const KnowledgeGraph& g, RelationId q);

nlohmann::json to_json(const NetworkSpec& spec);
NetworkSpec network_from_json(const nlohmann::json& j);

nlohmann::json rational_to_json(const Rational& x);
Rational rational_from_json(const nlohmann::json& j);

}  // namespace relwl
