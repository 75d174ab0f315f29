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

#include "relwl/network.hpp"

#include <algorithm>

#include "relwl/error.hpp"

namespace relwl {
namespace {

template <typename E, std::size_t N>
E parse_enum(std::string_view name, const E (&values)[N], std::string_view what) {
  for (E v : values) {
    if (to_string(v) == name) return v;
  }
  throw ValidationError("unknown " + std::string(what) + ": " + std::string(name));
}

constexpr ModelKind kKinds[] = {ModelKind::kRmpnn, ModelKind::kCmpnn};
constexpr Initialization kInits[] = {Initialization::kZero,       Initialization::kOnes,
                                     Initialization::kQuery,      Initialization::kQueryNoise,
                                     Initialization::kNoise,      Initialization::kPairTable};
constexpr Message kMessages[] = {Message::kQueryScaled, Message::kVector, Message::kMatrix,
                                 Message::kScaling};
constexpr Aggregation kAggregations[] = {Aggregation::kSum, Aggregation::kPna};
constexpr Activation kActivations[] = {Activation::kSign, Activation::kRelu,
                                       Activation::kTruncatedRelu, Activation::kIdentity};
constexpr UpdateForm kForms[] = {UpdateForm::kShared, UpdateForm::kSplit};
constexpr NumericMode kModes[] = {NumericMode::kFloat64, NumericMode::kExactRational};

void require(bool ok, const std::string& message) {
  if (!ok) throw ValidationError("network spec: " + message);
}

bool is_zero(const Vector<Rational>& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

nlohmann::json encode(const Rational& x, NumericMode mode) {
  if (mode == NumericMode::kFloat64) return x.get_d();
  return rational_to_json(x);
}

Rational decode(const nlohmann::json& j) {
  if (j.is_number()) return Rational(j.get<double>());
  return rational_from_json(j);
}

nlohmann::json encode(const Vector<Rational>& v, NumericMode mode) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& x : v) out.push_back(encode(x, mode));
  return out;
}

Vector<Rational> decode_vector(const nlohmann::json& j) {
  Vector<Rational> out;
  for (const auto& x : j) out.push_back(decode(x));
  return out;
}

nlohmann::json encode(const Matrix<Rational>& m, NumericMode mode) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(encode(m(i, j), mode));
    rows.push_back(std::move(row));
  }
  return nlohmann::json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(rows)}};
}

Matrix<Rational> decode_matrix(const nlohmann::json& j) {
  Matrix<Rational> m(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>());
  const auto& data = j.at("data");
  require(data.size() == m.rows(), "matrix row count mismatch");
  for (std::size_t i = 0; i < m.rows(); ++i) {
    require(data[i].size() == m.cols(), "matrix column count mismatch");
    for (std::size_t k = 0; k < m.cols(); ++k) m(i, k) = decode(data[i][k]);
  }
  return m;
}

}  // namespace

std::string_view to_string(ModelKind v) { return v == ModelKind::kRmpnn ? "rmpnn" : "cmpnn"; }

std::string_view to_string(Initialization v) {
  switch (v) {
    case Initialization::kZero: return "delta0";
    case Initialization::kOnes: return "delta1";
    case Initialization::kQuery: return "delta2";
    case Initialization::kQueryNoise: return "delta3";
    case Initialization::kNoise: return "delta4";
    case Initialization::kPairTable: return "pair-table";
  }
  return "delta0";
}

std::string_view to_string(Message v) {
  switch (v) {
    case Message::kQueryScaled: return "theta1";
    case Message::kVector: return "theta2";
    case Message::kMatrix: return "theta3";
    case Message::kScaling: return "scaling";
  }
  return "scaling";
}

std::string_view to_string(Aggregation v) { return v == Aggregation::kSum ? "sum" : "pna"; }

std::string_view to_string(Activation v) {
  switch (v) {
    case Activation::kSign: return "sign";
    case Activation::kRelu: return "relu";
    case Activation::kTruncatedRelu: return "truncated-relu";
    case Activation::kIdentity: return "identity";
  }
  return "identity";
}

std::string_view to_string(UpdateForm v) { return v == UpdateForm::kShared ? "shared" : "split"; }

std::string_view to_string(NumericMode v) {
  return v == NumericMode::kFloat64 ? "float64" : "exact-rational";
}

std::size_t NetworkSpec::message_width(std::size_t t) const {
  return update_form == UpdateForm::kShared ? dims.at(t) : dims.at(t + 1);
}

void NetworkSpec::validate() const {
  const std::size_t num_rel = relations.size();
  require(dims.size() == layers.size() + 1, "need exactly one width per layer boundary");
  if (mode == NumericMode::kExactRational) {
    require(aggregation != Aggregation::kPna, "exact mode does not support PNA");
    require(kind == ModelKind::kRmpnn ||
                (init != Initialization::kQueryNoise && init != Initialization::kNoise),
            "exact mode does not support noisy initializations");
  }
  require(kind == ModelKind::kCmpnn || message != Message::kQueryScaled,
          "theta1 needs a query relation (C-MPNN only)");

  const bool uses_query = kind == ModelKind::kCmpnn &&
                          (init == Initialization::kQuery ||
                           init == Initialization::kQueryNoise ||
                           message == Message::kQueryScaled);
  std::size_t z_dim = 0;
  if (uses_query) {
    require(query_vectors.size() == num_rel, "one query vector per relation");
    for (const auto& z : query_vectors) {
      if (&z == &query_vectors.front()) z_dim = z.size();
      require(z.size() == z_dim, "query vectors must share a dimension");
    }
    if (init == Initialization::kQuery || init == Initialization::kQueryNoise) {
      require(num_rel == 0 || z_dim == dims[0], "query vectors must have dimension d(0)");
    }
  }
  if (kind == ModelKind::kCmpnn && init == Initialization::kPairTable) {
    for (const auto& [label, vec] : pair_table) {
      require(vec.size() == dims[0], "pair-table entry '" + label + "' must have dimension d(0)");
    }
  }

  for (std::size_t t = 0; t < layers.size(); ++t) {
    const LayerParams& p = layers[t];
    const std::size_t din = dims[t];
    const std::size_t dout = dims[t + 1];
    const std::size_t msg = message_width(t);
    const std::string where = "layer " + std::to_string(t) + ": ";
    require(dims[history(t)] == din, where + "history input width differs from d(t)");
    require(p.weight.rows() == dout && p.weight.cols() == din,
            where + "weight must be d(t+1) x d(t)");
    if (p.bias) require(p.bias->size() == dout, where + "bias must have dimension d(t+1)");

    std::size_t raw = din;
    switch (message) {
      case Message::kScaling:
        require(p.scaling.size() == num_rel, where + "one scaling factor per relation");
        break;
      case Message::kVector:
        require(p.relation_vectors.size() == num_rel, where + "one vector per relation");
        for (const auto& b : p.relation_vectors) require(b.size() == din, where + "b_r must be d(t)");
        break;
      case Message::kQueryScaled:
        require(p.relation_matrices.size() == num_rel, where + "one matrix per relation");
        for (const auto& m : p.relation_matrices) {
          require(m.rows() == din && m.cols() == z_dim, where + "W_r must be d(t) x |z_q|");
        }
        break;
      case Message::kMatrix:
        require(p.relation_matrices.size() == num_rel, where + "one matrix per relation");
        if (num_rel > 0) raw = p.relation_matrices.front().rows();
        else raw = aggregation == Aggregation::kSum ? msg : din;
        for (const auto& m : p.relation_matrices) {
          require(m.rows() == raw && m.cols() == din, where + "W_r shapes must agree");
        }
        break;
    }
    if (aggregation == Aggregation::kSum) {
      require(p.pna_projection == std::nullopt, where + "PNA projection without PNA");
      require(raw == msg, where + "message width must match the combination width");
    } else {
      require(p.pna_projection.has_value(), where + "PNA needs a projection");
      require(p.pna_projection->rows() == msg && p.pna_projection->cols() == 12 * raw,
              where + "PNA projection must be message-width x 12 * raw width");
    }
  }
}

bool NetworkSpec::target_node_distinguishable() const {
  switch (init) {
    case Initialization::kZero:
      return false;
    case Initialization::kOnes:
      return dims.empty() || dims[0] > 0;
    case Initialization::kQuery:
      return std::none_of(query_vectors.begin(), query_vectors.end(), is_zero);
    case Initialization::kQueryNoise:
    case Initialization::kNoise:
      return true;
    case Initialization::kPairTable:
      return false;
  }
  return false;
}

bool init_distinguishes_targets(const NetworkSpec& spec, const KnowledgeGraph& g, RelationId q) {
  if (spec.init != Initialization::kPairTable) {
    if (spec.init == Initialization::kQuery && q < spec.query_vectors.size()) {
      return !is_zero(spec.query_vectors[q]);
    }
    return spec.target_node_distinguishable();
  }
  if (!g.pair_coloring()) return false;
  const PairColoring& eta = *g.pair_coloring();
  const Vector<Rational> zero(spec.dims.empty() ? 0 : spec.dims[0], Rational(0));
  auto entry = [&](NodeId u, NodeId v) -> const Vector<Rational>& {
    auto it = spec.pair_table.find(eta.label(u, v));
    return it == spec.pair_table.end() ? zero : it->second;
  };
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
      if (u != v && entry(u, u) == entry(u, v)) return false;
    }
  }
  return true;
}

nlohmann::json rational_to_json(const Rational& x) {
  return nlohmann::json{{"num", x.get_num().get_str()}, {"den", x.get_den().get_str()}};
}

Rational rational_from_json(const nlohmann::json& j) {
  auto field = [&](const char* key) -> mpz_class {
    const auto& v = j.at(key);
    if (v.is_number_integer()) return mpz_class(std::to_string(v.get<long long>()));
    return mpz_class(v.get<std::string>());
  };
  mpz_class den = field("den");
  if (den == 0) throw ValidationError("rational with zero denominator");
  Rational out(field("num"), den);
  out.canonicalize();
  return out;
}

nlohmann::json to_json(const NetworkSpec& spec) {
  nlohmann::json layers = nlohmann::json::array();
  for (const LayerParams& p : spec.layers) {
    nlohmann::json layer;
    layer["weight"] = encode(p.weight, spec.mode);
    layer["bias"] = p.bias ? encode(*p.bias, spec.mode) : nlohmann::json();
    layer["scaling"] = encode(p.scaling, spec.mode);
    layer["relation_vectors"] = nlohmann::json::array();
    for (const auto& b : p.relation_vectors) layer["relation_vectors"].push_back(encode(b, spec.mode));
    layer["relation_matrices"] = nlohmann::json::array();
    for (const auto& m : p.relation_matrices) layer["relation_matrices"].push_back(encode(m, spec.mode));
    layer["pna_projection"] = p.pna_projection ? encode(*p.pna_projection, spec.mode) : nlohmann::json();
    layers.push_back(std::move(layer));
  }
  nlohmann::json queries = nlohmann::json::array();
  for (const auto& z : spec.query_vectors) queries.push_back(encode(z, spec.mode));
  nlohmann::json table = nlohmann::json::object();
  for (const auto& [label, v] : spec.pair_table) table[label] = encode(v, spec.mode);
  nlohmann::json history;
  if (spec.history.kind() == HistoryFunction::Kind::kTable) {
    history = spec.history.table();
  } else {
    history = spec.history.describe();
  }
  return nlohmann::json{
      {"schema", 1},
      {"kind", to_string(spec.kind)},
      {"numeric_mode", to_string(spec.mode)},
      {"dims", spec.dims},
      {"relations", spec.relations},
      {"init", to_string(spec.init)},
      {"message", to_string(spec.message)},
      {"aggregation", to_string(spec.aggregation)},
      {"activation", to_string(spec.activation)},
      {"update_form", to_string(spec.update_form)},
      {"history", std::move(history)},
      {"seed", spec.seed},
      {"strict_sign", spec.strict_sign},
      {"query_vectors", std::move(queries)},
      {"pair_table", std::move(table)},
      {"layers", std::move(layers)},
  };
}

NetworkSpec network_from_json(const nlohmann::json& j) {
  try {
    NetworkSpec spec;
    spec.kind = parse_enum(j.at("kind").get<std::string>(), kKinds, "model kind");
    spec.mode = parse_enum(j.at("numeric_mode").get<std::string>(), kModes, "numeric mode");
    spec.dims = j.at("dims").get<std::vector<std::size_t>>();
    spec.relations = j.at("relations").get<std::vector<std::string>>();
    spec.init = parse_enum(j.at("init").get<std::string>(), kInits, "initialization");
    spec.message = parse_enum(j.at("message").get<std::string>(), kMessages, "message");
    spec.aggregation = parse_enum(j.at("aggregation").get<std::string>(), kAggregations, "aggregation");
    spec.activation = parse_enum(j.at("activation").get<std::string>(), kActivations, "activation");
    spec.update_form = parse_enum(j.at("update_form").get<std::string>(), kForms, "update form");
    const auto& h = j.at("history");
    spec.history = h.is_array() ? HistoryFunction::Table(h.get<std::vector<std::size_t>>())
                                : HistoryFunction::Parse(h.get<std::string>());
    spec.seed = j.at("seed").get<std::uint64_t>();
    spec.strict_sign = j.at("strict_sign").get<bool>();
    for (const auto& z : j.at("query_vectors")) spec.query_vectors.push_back(decode_vector(z));
    for (const auto& [label, v] : j.at("pair_table").items()) spec.pair_table[label] = decode_vector(v);
    for (const auto& l : j.at("layers")) {
      LayerParams p;
      p.weight = decode_matrix(l.at("weight"));
      if (!l.at("bias").is_null()) p.bias = decode_vector(l.at("bias"));
      p.scaling = decode_vector(l.at("scaling"));
      for (const auto& b : l.at("relation_vectors")) p.relation_vectors.push_back(decode_vector(b));
      for (const auto& m : l.at("relation_matrices")) p.relation_matrices.push_back(decode_matrix(m));
      if (!l.at("pna_projection").is_null()) p.pna_projection = decode_matrix(l.at("pna_projection"));
      spec.layers.push_back(std::move(p));
    }
    spec.validate();
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("network spec JSON: ") + e.what());
  }
}

}  // namespace relwl
