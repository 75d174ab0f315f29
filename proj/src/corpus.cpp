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

#include "relwl/corpus.hpp"

#include <algorithm>
#include <random>
#include <tuple>

#include "relwl/error.hpp"

namespace relwl {
namespace {

using Pair = std::pair<std::string, std::string>;

KnowledgeGraph build(std::vector<std::string> nodes, std::vector<std::string> relations,
                     const std::vector<std::tuple<std::string, std::string, std::string>>& facts) {
  std::vector<Fact> out;
  auto index = [](const std::vector<std::string>& names, const std::string& name) {
    return static_cast<std::uint32_t>(std::find(names.begin(), names.end(), name) - names.begin());
  };
  for (const auto& [head, rel, tail] : facts) {
    out.push_back(Fact{index(relations, rel), index(nodes, head), index(nodes, tail)});
  }
  KnowledgeGraph g(std::move(nodes), std::move(relations), std::move(out));
  return g.with_pair_coloring(default_pair_coloring(g));
}

Claim claim(TestId test, Pair a, Pair b, Distinction d) {
  return Claim{test, std::move(a), std::move(b), d};
}

}  // namespace

const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names = {"ga", "gb", "gc", "gd"};
  return names;
}

Fixture fixture(std::string_view name) {
  const auto never = Distinction::Never();
  const auto at1 = Distinction::At(1);
  if (name == "ga") {
    return Fixture{"ga",
                   build({"u", "v", "v'"}, {"r1", "r2"}, {{"v", "r1", "u"}, {"v'", "r2", "u"}}),
                   {claim(TestId::kRawl2, {"u", "v"}, {"u", "v'"}, never),
                    claim(TestId::kRawl2Plus, {"u", "v"}, {"u", "v'"}, at1)}};
  }
  if (name == "gb") {
    return Fixture{"gb", build({"u", "u'", "v", "x"}, {"r"}, {{"x", "r", "u'"}}),
                   {claim(TestId::kRawl2, {"u", "v"}, {"u'", "v"}, never),
                    claim(TestId::kRwl2, {"u", "v"}, {"u'", "v"}, at1),
                    claim(TestId::kRawl2Plus, {"u", "v"}, {"u'", "v"}, never)}};
  }
  if (name == "gc") {
    return Fixture{"gc",
                   build({"u", "u'", "v", "v'", "x", "x'"}, {"r1", "r2"},
                         {{"u", "r1", "x"}, {"u'", "r2", "x'"}}),
                   {claim(TestId::kRwl2, {"u", "v"}, {"u'", "v'"}, never),
                    claim(TestId::kRwl2Plus, {"u", "v"}, {"u'", "v'"}, at1)}};
  }
  if (name == "gd") {
    return Fixture{"gd",
                   build({"u", "u'", "v", "v'", "x", "x'"}, {"r1", "r2"},
                         {{"v", "r1", "x"}, {"v'", "r2", "x'"}}),
                   {claim(TestId::kRwl2, {"u", "v"}, {"u'", "v'"}, never),
                    claim(TestId::kRawl2Plus, {"u", "v"}, {"u'", "v'"}, at1)}};
  }
  throw LookupError("unknown fixture '" + std::string(name) + "' (expected ga, gb, gc or gd)");
}

std::vector<ClaimResult> check_claims(const Fixture& f) {
  std::vector<ClaimResult> out;
  for (const Claim& c : f.claims) {
    const WLTrace trace = run_test(c.test, f.graph, HistoryFunction::Identity(), Horizon::Stabilize());
    const auto& g = f.graph;
    const std::size_t a = trace.index(g.node(c.pair_a.first), g.node(c.pair_a.second));
    const std::size_t b = trace.index(g.node(c.pair_b.first), g.node(c.pair_b.second));
    out.push_back(ClaimResult{c, distinguishes(trace, a, b)});
  }
  return out;
}

std::string describe(const Distinction& d) {
  switch (d.verdict) {
    case Distinction::Verdict::kAt:
      return "distinguished at t=" + std::to_string(d.iteration);
    case Distinction::Verdict::kNever:
      return "never distinguished";
    case Distinction::Verdict::kUnknownBeyondHorizon:
      return "unknown beyond horizon";
  }
  return "?";
}

std::string describe(const Claim& c) {
  return std::string(to_string(c.test)) + " (" + c.pair_a.first + "," + c.pair_a.second +
         ") vs (" + c.pair_b.first + "," + c.pair_b.second + "): " + describe(c.expected);
}

KnowledgeGraph random_kg(std::uint64_t seed, const RandomGraphConfig& config) {
  if (config.n_max < 1 || config.r_max < 1 || config.n_min > config.n_max ||
      config.r_min > config.r_max) {
    throw ValidationError("random_kg: need 1 <= n_min <= n_max and 1 <= r_min <= r_max");
  }
  if (!(config.density >= 0.0 && config.density <= 1.0)) {
    throw ValidationError("random_kg: density must lie in [0, 1]");
  }
  std::mt19937_64 rng(seed);
  auto uniform = [&](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };
  const std::size_t n = uniform(std::max<std::size_t>(config.n_min, 1), config.n_max);
  const std::size_t num_rel = uniform(std::max<std::size_t>(config.r_min, 1), config.r_max);
  std::vector<std::string> nodes, relations;
  for (std::size_t i = 0; i < n; ++i) nodes.push_back("n" + std::to_string(i));
  for (std::size_t i = 0; i < num_rel; ++i) relations.push_back("r" + std::to_string(i));

  std::bernoulli_distribution coin(config.density);
  std::vector<Fact> facts;
  for (RelationId r = 0; r < num_rel; ++r)
    for (NodeId a = 0; a < n; ++a)
      for (NodeId b = 0; b < n; ++b)
        if (coin(rng)) facts.push_back(Fact{r, a, b});

  // Full label vocabularies, even for labels no node or pair ends up using.
  const std::size_t k = std::max<std::size_t>(config.node_colors, 1);
  NodeColoring colors;
  for (std::size_t i = 0; i < k; ++i) colors.labels.push_back("c" + std::to_string(i));
  for (std::size_t i = 0; i < n; ++i) {
    colors.ids.push_back(static_cast<ColorId>(k == 1 ? 0 : uniform(0, k - 1)));
  }
  KnowledgeGraph g(std::move(nodes), std::move(relations), std::move(facts), std::move(colors));

  switch (config.pair_coloring) {
    case RandomPairColoring::kNone:
      return g;
    case RandomPairColoring::kDiagonal:
      return g.with_pair_coloring(default_pair_coloring(g, PairColoringMode::kDiagonal));
    case RandomPairColoring::kColoredDiagonal:
      return g.with_pair_coloring(default_pair_coloring(g, PairColoringMode::kColoredDiagonal));
    case RandomPairColoring::kRandomDistinguishing: {
      const std::size_t pk = std::max<std::size_t>(config.pair_colors, 1);
      std::vector<std::string> labels;
      for (std::size_t i = 0; i < pk; ++i) labels.push_back("d" + std::to_string(i));
      for (std::size_t i = 0; i < pk; ++i) labels.push_back("o" + std::to_string(i));
      std::vector<ColorId> ids(n * n);
      for (NodeId u = 0; u < n; ++u) {
        for (NodeId v = 0; v < n; ++v) {
          ids[u * n + v] = static_cast<ColorId>((u == v ? 0 : pk) + uniform(0, pk - 1));
        }
      }
      return g.with_pair_coloring(PairColoring(n, std::move(ids), std::move(labels)));
    }
  }
  return g;
}

KnowledgeGraph random_kg(std::uint64_t seed, std::size_t n_max, std::size_t r_max,
                         double density) {
  RandomGraphConfig config;
  config.n_max = n_max;
  config.r_max = r_max;
  config.density = density;
  return random_kg(seed, config);
}

}  // namespace relwl
