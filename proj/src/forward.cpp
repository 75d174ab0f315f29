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

#include "relwl/forward.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <string_view>
#include <type_traits>

#include "relwl/error.hpp"

namespace relwl {
namespace {

template <typename S>
S cast(const Rational& x) {
  if constexpr (std::is_same_v<S, double>) {
    return x.get_d();
  } else {
    return x;
  }
}

template <typename S>
Vector<S> cast(const Vector<Rational>& v) {
  Vector<S> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(cast<S>(x));
  return out;
}

template <typename S>
Matrix<S> cast(const Matrix<Rational>& m) {
  Matrix<S> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = cast<S>(m(i, j));
  return out;
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

Vector<double> gaussian(std::uint64_t seed, std::size_t dim) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector<double> out(dim);
  for (auto& x : out) x = normal(rng);
  return out;
}

template <typename S>
void check_mode(const NetworkSpec& spec) {
  const bool exact = std::is_same_v<S, Rational>;
  if (exact != (spec.mode == NumericMode::kExactRational)) {
    throw PreconditionError(std::string("network is in ") + std::string(to_string(spec.mode)) +
                            " mode; evaluate it with the matching scalar type");
  }
}

// graph relation id -> spec relation index
std::vector<std::size_t> relation_map(const KnowledgeGraph& g, const NetworkSpec& spec) {
  std::vector<std::size_t> out(g.num_relations());
  for (RelationId r = 0; r < g.num_relations(); ++r) {
    auto it = std::find(spec.relations.begin(), spec.relations.end(), g.relation_name(r));
    if (it == spec.relations.end()) {
      throw ValidationError("relation '" + g.relation_name(r) + "' is unknown to the network");
    }
    out[r] = static_cast<std::size_t>(it - spec.relations.begin());
  }
  return out;
}

template <typename S>
S activate(Activation a, const S& x, bool strict) {
  switch (a) {
    case Activation::kSign:
      if (x == 0 && strict) throw Error("sign activation applied at 0 in a strict network");
      return x > 0 ? S(1) : S(-1);
    case Activation::kRelu:
      return x > 0 ? x : S(0);
    case Activation::kTruncatedRelu:
      if (x <= 0) return S(0);
      return x >= 1 ? S(1) : x;
    case Activation::kIdentity:
      return x;
  }
  return x;
}

void add_into(Vector<double>& acc, const Vector<double>& v) {
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += v[i];
}
void add_into(Vector<Rational>& acc, const Vector<Rational>& v) {
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += v[i];
}

// mean, max, min, std, each under identity / amplification / attenuation.
Vector<double> pna_features(const std::vector<Vector<double>>& msgs, std::size_t width,
                            double mean_log_degree) {
  Vector<double> mean(width, 0.0), mx(width, 0.0), mn(width, 0.0), sd(width, 0.0);
  const std::size_t deg = msgs.size();
  if (deg > 0) {
    mx = msgs.front();
    mn = msgs.front();
    for (const auto& m : msgs) {
      for (std::size_t i = 0; i < width; ++i) {
        mean[i] += m[i];
        mx[i] = std::max(mx[i], m[i]);
        mn[i] = std::min(mn[i], m[i]);
      }
    }
    for (auto& x : mean) x /= static_cast<double>(deg);
    for (const auto& m : msgs)
      for (std::size_t i = 0; i < width; ++i) sd[i] += (m[i] - mean[i]) * (m[i] - mean[i]);
    for (auto& x : sd) x = std::sqrt(x / static_cast<double>(deg));
  }
  const double logd = std::log(static_cast<double>(deg) + 1.0);
  const double scalers[3] = {1.0, logd / mean_log_degree,
                             logd > 0 ? mean_log_degree / logd : 0.0};
  Vector<double> out;
  out.reserve(12 * width);
  for (double s : scalers) {
    for (const auto* agg : {&mean, &mx, &mn, &sd}) {
      for (double x : *agg) out.push_back(s * x);
    }
  }
  return out;
}

template <typename S>
struct LayerCache {
  Matrix<S> weight;
  std::optional<Vector<S>> bias;
  std::vector<S> scaling;
  std::vector<Vector<S>> vectors;   // theta^2 b_r, or theta^1 W_r z_q
  std::vector<Matrix<S>> matrices;  // theta^3
  std::optional<Matrix<S>> projection;
};

// Shared recurrence for R-MPNNs on G and for one C-MPNN row.
template <typename S>
FeatureTable<S> propagate(const KnowledgeGraph& g, const NetworkSpec& spec,
                          std::vector<Vector<S>> h0, std::optional<RelationId> query) {
  spec.validate();
  const std::size_t n = g.num_nodes();
  if (h0.size() != n) throw ValidationError("initial features: one vector per node required");
  for (const auto& h : h0) {
    if (h.size() != spec.dims.at(0)) {
      throw ValidationError("initial features: dimension differs from d(0)");
    }
  }
  const std::vector<std::size_t> rel = relation_map(g, spec);

  double mean_log_degree = 0.0;
  if (spec.aggregation == Aggregation::kPna) {
    for (NodeId v = 0; v < n; ++v) mean_log_degree += std::log(g.incoming(v).size() + 1.0);
    if (n > 0) mean_log_degree /= static_cast<double>(n);
    if (mean_log_degree == 0.0) mean_log_degree = 1.0;
  }

  FeatureTable<S> table;
  table.arity = 1;
  table.num_nodes = n;
  table.layers.push_back(std::move(h0));

  for (std::size_t t = 0; t < spec.num_layers(); ++t) {
    const LayerParams& p = spec.layers[t];
    LayerCache<S> c;
    c.weight = cast<S>(p.weight);
    if (p.bias) c.bias = cast<S>(*p.bias);
    switch (spec.message) {
      case Message::kScaling:
        for (const auto& a : p.scaling) c.scaling.push_back(cast<S>(a));
        break;
      case Message::kVector:
        for (const auto& b : p.relation_vectors) c.vectors.push_back(cast<S>(b));
        break;
      case Message::kQueryScaled: {
        if (!query) throw PreconditionError("theta1 messages need a query relation");
        const Vector<Rational>& zq = spec.query_vectors.at(rel.at(*query));
        for (const auto& w : p.relation_matrices) c.vectors.push_back(cast<S>(w * zq));
        break;
      }
      case Message::kMatrix:
        for (const auto& w : p.relation_matrices) c.matrices.push_back(cast<S>(w));
        break;
    }
    if (p.pna_projection) c.projection = cast<S>(*p.pna_projection);

    const auto& cur = table.layers[t];
    const auto& own = table.layers[spec.history(t)];
    const std::size_t din = spec.dims[t];
    const std::size_t msg_width = spec.message_width(t);
    std::vector<Vector<S>> next(n);

    for (NodeId v = 0; v < n; ++v) {
      std::vector<Vector<S>> msgs;
      for (const InEdge& e : g.incoming(v)) {
        const std::size_t r = rel[e.relation];
        const Vector<S>& h = cur[e.source];
        Vector<S> m;
        switch (spec.message) {
          case Message::kScaling:
            m = h;
            for (auto& x : m) x *= c.scaling[r];
            break;
          case Message::kVector:
          case Message::kQueryScaled:
            m = h;
            for (std::size_t i = 0; i < din; ++i) m[i] *= c.vectors[r][i];
            break;
          case Message::kMatrix:
            m = c.matrices[r] * h;
            break;
        }
        msgs.push_back(std::move(m));
      }

      Vector<S> agg(msg_width, S(0));
      if (spec.aggregation == Aggregation::kSum) {
        for (const auto& m : msgs) add_into(agg, m);
      } else {
        if constexpr (std::is_same_v<S, double>) {
          const std::size_t raw = c.projection->cols() / 12;
          agg = *c.projection * pna_features(msgs, raw, mean_log_degree);
        } else {
          throw ValidationError("PNA aggregation is float-only");
        }
      }

      Vector<S> pre;
      if (spec.update_form == UpdateForm::kShared) {
        Vector<S> combined = own[v];
        add_into(combined, agg);
        pre = c.weight * combined;
      } else {
        pre = c.weight * own[v];
        add_into(pre, agg);
      }
      if (c.bias) add_into(pre, *c.bias);
      for (auto& x : pre) x = activate<S>(spec.activation, x, spec.strict_sign);
      next[v] = std::move(pre);
    }
    table.layers.push_back(std::move(next));
  }
  return table;
}

}  // namespace

template <typename S>
Coloring partition_of(const FeatureTable<S>& table, std::size_t t) {
  const auto& layer = table.layers.at(t);
  std::map<Vector<S>, std::uint32_t> ids;
  Coloring out;
  out.reserve(layer.size());
  for (const auto& v : layer) {
    auto [it, inserted] = ids.emplace(v, static_cast<std::uint32_t>(ids.size()));
    out.push_back(it->second);
  }
  return out;
}

template <typename S>
FeatureTable<S> rmpnn_forward(const KnowledgeGraph& g, const NetworkSpec& spec,
                              const std::vector<Vector<S>>& x) {
  check_mode<S>(spec);
  if (spec.kind != ModelKind::kRmpnn) throw PreconditionError("rmpnn_forward needs an R-MPNN");
  return propagate<S>(g, spec, x, std::nullopt);
}

template <typename S>
std::vector<Vector<S>> initial_pair_features(const KnowledgeGraph& g, const NetworkSpec& spec,
                                             RelationId q, NodeId u) {
  check_mode<S>(spec);
  const std::size_t n = g.num_nodes();
  const std::size_t d0 = spec.dims.at(0);
  if (u >= n) throw LookupError("source node out of range");
  if (q >= g.num_relations()) throw LookupError("query relation out of range");
  const std::vector<std::size_t> rel = relation_map(g, spec);
  std::vector<Vector<S>> h(n, Vector<S>(d0, S(0)));
  switch (spec.init) {
    case Initialization::kZero:
      break;
    case Initialization::kOnes:
      h[u] = Vector<S>(d0, S(1));
      break;
    case Initialization::kQuery:
      h[u] = cast<S>(spec.query_vectors.at(rel[q]));
      break;
    case Initialization::kQueryNoise:
    case Initialization::kNoise:
      if constexpr (std::is_same_v<S, double>) {
        if (spec.init == Initialization::kQueryNoise) {
          h[u] = cast<S>(spec.query_vectors.at(rel[q]));
          add_into(h[u], gaussian(spec.seed ^ fnv1a(g.node_name(u)), d0));
        } else {
          h[u] = gaussian(spec.seed ^ fnv1a("query:" + g.relation_name(q)), d0);
        }
      } else {
        throw ValidationError("noisy initializations are float-only");
      }
      break;
    case Initialization::kPairTable: {
      if (!g.pair_coloring()) throw PreconditionError("pair-table initialization needs eta");
      for (NodeId v = 0; v < n; ++v) {
        const std::string& label = g.pair_coloring()->label(u, v);
        auto it = spec.pair_table.find(label);
        if (it == spec.pair_table.end()) {
          throw LookupError("pair color '" + label + "' missing from the network's table");
        }
        h[v] = cast<S>(it->second);
      }
      break;
    }
  }
  return h;
}

template <typename S>
FeatureTable<S> cmpnn_row(const KnowledgeGraph& g, const NetworkSpec& spec, RelationId q,
                          NodeId u) {
  check_mode<S>(spec);
  if (spec.kind != ModelKind::kCmpnn) throw PreconditionError("cmpnn_row needs a C-MPNN");
  return propagate<S>(g, spec, initial_pair_features<S>(g, spec, q, u), q);
}

template <typename S>
FeatureTable<S> cmpnn_table(const KnowledgeGraph& g, const NetworkSpec& spec, RelationId q) {
  const std::size_t n = g.num_nodes();
  FeatureTable<S> out;
  out.arity = 2;
  out.num_nodes = n;
  out.layers.assign(spec.num_layers() + 1, std::vector<Vector<S>>(n * n));
  for (NodeId u = 0; u < n; ++u) {
    FeatureTable<S> row = cmpnn_row<S>(g, spec, q, u);
    for (std::size_t t = 0; t < row.layers.size(); ++t)
      for (NodeId v = 0; v < n; ++v) out.layers[t][u * n + v] = std::move(row.layers[t][v]);
  }
  return out;
}

double score_link(const NetworkSpec& spec, const LinkDecoder& decoder, const KnowledgeGraph& g,
                  RelationId q, NodeId u, NodeId v) {
  if (spec.mode != NumericMode::kFloat64) {
    throw PreconditionError("score_link is unsupported in exact mode (sigmoid is transcendental)");
  }
  if (v >= g.num_nodes()) throw LookupError("target node out of range");
  const FeatureTable<double> row = cmpnn_row<double>(g, spec, q, u);
  const Vector<double>& h = row.layers.back()[v];
  Vector<double> hidden = decoder.hidden_weight * h;
  if (hidden.size() != decoder.hidden_bias.size() ||
      hidden.size() != decoder.output_weight.size()) {
    throw ValidationError("decoder: shape mismatch");
  }
  double logit = decoder.output_bias;
  for (std::size_t i = 0; i < hidden.size(); ++i) {
    logit += decoder.output_weight[i] * std::max(0.0, hidden[i] + decoder.hidden_bias[i]);
  }
  return 1.0 / (1.0 + std::exp(-logit));
}

template <typename S>
nlohmann::json table_to_json(const FeatureTable<S>& table) {
  nlohmann::json layers = nlohmann::json::array();
  for (const auto& layer : table.layers) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& vec : layer) {
      nlohmann::json row = nlohmann::json::array();
      for (const auto& x : vec) {
        if constexpr (std::is_same_v<S, double>) {
          row.push_back(x);
        } else {
          row.push_back(rational_to_json(x));
        }
      }
      rows.push_back(std::move(row));
    }
    layers.push_back(std::move(rows));
  }
  return nlohmann::json{{"schema", 1},
                        {"arity", table.arity},
                        {"num_nodes", table.num_nodes},
                        {"layers", std::move(layers)}};
}

#define RELWL_INSTANTIATE(S)                                                                   \
  template Coloring partition_of<S>(const FeatureTable<S>&, std::size_t);                      \
  template FeatureTable<S> rmpnn_forward<S>(const KnowledgeGraph&, const NetworkSpec&,         \
                                            const std::vector<Vector<S>>&);                    \
  template FeatureTable<S> cmpnn_row<S>(const KnowledgeGraph&, const NetworkSpec&, RelationId, \
                                        NodeId);                                               \
  template FeatureTable<S> cmpnn_table<S>(const KnowledgeGraph&, const NetworkSpec&,           \
                                          RelationId);                                         \
  template std::vector<Vector<S>> initial_pair_features<S>(                                    \
      const KnowledgeGraph&, const NetworkSpec&, RelationId, NodeId);                          \
  template nlohmann::json table_to_json<S>(const FeatureTable<S>&);

RELWL_INSTANTIATE(double)
RELWL_INSTANTIATE(Rational)

#undef RELWL_INSTANTIATE

}  // namespace relwl
