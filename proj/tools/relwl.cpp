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

// relwl command-line front-end. Exit codes: 0 ok, 1 property violation,
// 2 usage or input error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "relwl/coloring.hpp"
#include "relwl/corpus.hpp"
#include "relwl/error.hpp"
#include "relwl/forward.hpp"
#include "relwl/history.hpp"
#include "relwl/kg.hpp"
#include "relwl/logic.hpp"
#include "relwl/simulators.hpp"
#include "relwl/unravel.hpp"
#include "relwl/verify.hpp"
#include "relwl/wl.hpp"

namespace {

using json = nlohmann::json;
using namespace relwl;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

std::size_t node_budget() {
  const char* env = std::getenv("RELWL_NODE_BUDGET");
  if (env == nullptr || *env == '\0') return kDefaultNodeBudget;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(env, &used);
    if (used != std::string(env).size() || v == 0) throw std::invalid_argument("budget");
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw ValidationError("RELWL_NODE_BUDGET must be a positive integer");
  }
}

struct GraphInput {
  std::string graph;
  std::string fixture;
  std::string colors;
  std::string pair_colors;
  std::string pair_mode = "diagonal";

  void add_to(CLI::App* app, bool pair_options) {
    app->add_option("--graph", graph, "triple file (head TAB relation TAB tail)");
    app->add_option("--fixture", fixture, "built-in fixture: ga, gb, gc, gd");
    app->add_option("--colors", colors, "node color file (node TAB label)");
    if (pair_options) {
      app->add_option("--pair-colors", pair_colors, "pair color file (node TAB node TAB label)");
      app->add_option("--pair-mode", pair_mode, "default pair coloring when none is given")
          ->check(CLI::IsMember({"diagonal", "colored-diagonal"}));
    }
  }

  // `need_pairs`: install a default pair coloring (with a warning) if none given.
  KnowledgeGraph load(bool need_pairs) const {
    if (graph.empty() == fixture.empty()) throw ValidationError("give exactly one of --graph or --fixture");
    KnowledgeGraph g;
    if (!fixture.empty()) {
      g = relwl::fixture(fixture).graph;
      if (!colors.empty()) g = g.with_node_coloring(parse_node_colors(g, read_text(colors), colors));
    } else {
      g = parse_graph(read_text(graph), graph);
      if (!colors.empty()) g = g.with_node_coloring(parse_node_colors(g, read_text(colors), colors));
    }
    if (!pair_colors.empty()) {
      g = g.with_pair_coloring(parse_pair_colors(g, read_text(pair_colors), pair_colors));
    } else if (need_pairs && !g.pair_coloring()) {
      std::cerr << "warning: no pair coloring given; using the " << pair_mode
                << " coloring\n";
      g = g.with_pair_coloring(default_pair_coloring(
          g, pair_mode == "diagonal" ? PairColoringMode::kDiagonal
                                     : PairColoringMode::kColoredDiagonal));
    }
    return g;
  }
};

HistoryFunction history_from(const std::string& arg) {
  if (arg == "id" || arg == "identity" || arg == "zero") return HistoryFunction::Parse(arg);
  if (std::filesystem::exists(arg)) return HistoryFunction::Parse(read_text(arg));
  return HistoryFunction::Parse(arg);
}

std::string command_line(int argc, char** argv) {
  std::string out;
  for (int i = 0; i < argc; ++i) {
    if (i > 0) out += ' ';
    out += i == 0 ? std::string("relwl") : std::string(argv[i]);
  }
  return out;
}

std::string index_name(const KnowledgeGraph& g, std::size_t arity, std::size_t i) {
  if (arity == 1) return g.node_name(static_cast<NodeId>(i));
  const std::size_t n = g.num_nodes();
  return "(" + g.node_name(static_cast<NodeId>(i / n)) + "," +
         g.node_name(static_cast<NodeId>(i % n)) + ")";
}

void print_partition(std::ostream& out, const KnowledgeGraph& g, std::size_t arity,
                     const Coloring& c) {
  bool first_class = true;
  for (const auto& cls : classes(c)) {
    out << (first_class ? "{" : " {");
    first_class = false;
    for (std::size_t k = 0; k < cls.size(); ++k) out << (k ? " " : "") << index_name(g, arity, cls[k]);
    out << "}";
  }
  out << "\n";
}

std::pair<NodeId, NodeId> parse_pair(const KnowledgeGraph& g, const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw ValidationError("pairs are written u,v");
  return {g.node(text.substr(0, comma)), g.node(text.substr(comma + 1))};
}

Formula read_formula(const std::string& file, const std::string& expr, LogicArity arity) {
  if (file.empty() == expr.empty()) throw ValidationError("give exactly one of --formula or --expr");
  return parse_formula(file.empty() ? expr : read_text(file), arity);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"relwl: relational Weisfeiler-Leman tests, message-passing networks and logic"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "run a WL test and export its trace");
  GraphInput run_in;
  run_in.add_to(run, true);
  std::string run_test_name, run_history = "id", run_out = "json";
  std::optional<std::size_t> run_iters;
  bool run_stabilize = false, run_waive = false;
  run->add_option("--test", run_test_name, "rwl1 | rwl2 | rawl2 | rwl2+ | rawl2+")->required()
      ->check(CLI::IsMember({"rwl1", "rwl2", "rawl2", "rwl2+", "rawl2+"}));
  run->add_option("--history", run_history, "id | zero | file or list of f(0) f(1) ...");
  auto* iters_opt = run->add_option("--iters", run_iters, "fixed number of iterations");
  run->add_flag("--stabilize", run_stabilize, "iterate until the partition is stable")
      ->excludes(iters_opt);
  run->add_flag("--waive-tnd", run_waive, "allow pair colorings without target node distinguishability");
  run->add_option("--out", run_out, "json | text")->check(CLI::IsMember({"json", "text"}));

  // verify
  auto* verify = app.add_subcommand("verify", "run property suites and print a JSON report");
  std::string suite = "all", verify_out;
  std::uint64_t seed = 42;
  std::optional<std::size_t> trials;
  verify->add_option("--suite", suite, "reduction | history | hierarchy | simulation | logic | fixtures | all")
      ->check(CLI::IsMember(relwl::suite_names()));
  verify->add_option("--seed", seed, "seed for every random instance");
  verify->add_option("--trials", trials, "random instances per check")->check(CLI::PositiveNumber);
  verify->add_option("--report", verify_out, "also write the report to this file");

  // logic
  auto* logic = app.add_subcommand("logic", "evaluate, compile or translate formulas");
  logic->require_subcommand(1);
  std::string formula_file, formula_expr, arity_name = "binary", pairs = "all";
  auto add_formula = [&](CLI::App* cmd) {
    cmd->add_option("--formula", formula_file, "formula file");
    cmd->add_option("--expr", formula_expr, "formula text");
    cmd->add_option("--arity", arity_name, "binary (pair atoms) | unary (node atoms)")
        ->check(CLI::IsMember({"binary", "unary"}));
  };
  auto* logic_eval = logic->add_subcommand("eval", "truth table of a formula on a graph");
  GraphInput eval_in;
  eval_in.add_to(logic_eval, true);
  add_formula(logic_eval);
  logic_eval->add_option("--pairs", pairs, "all | u,v (binary); all | v (unary)");
  auto* logic_compile = logic->add_subcommand("compile", "compile a unary formula to an R-MPNN");
  GraphInput compile_in;
  compile_in.add_to(logic_compile, false);
  add_formula(logic_compile);
  auto* logic_translate = logic->add_subcommand("translate", "switch a formula between arities");
  add_formula(logic_translate);

  // simulate
  auto* simulate = app.add_subcommand("simulate", "build a WL-simulating network");
  simulate->require_subcommand(1);
  GraphInput sim_in;
  std::size_t sim_layers = 2;
  std::string sim_history = "id";
  auto* sim_rwl1 = simulate->add_subcommand("rwl1", "R-MPNN matching rwl1 on the graph");
  auto* sim_cmpnn = simulate->add_subcommand("cmpnn", "C-MPNN matching rawl2 on the graph");
  for (auto* cmd : {sim_rwl1, sim_cmpnn}) {
    sim_in.add_to(cmd, cmd == sim_cmpnn);
    cmd->add_option("--layers", sim_layers, "number of layers T");
    cmd->add_option("--history", sim_history, "id | zero | file or list");
  }

  // unravel
  auto* unravel_cmd = app.add_subcommand("unravel", "unravelling tree of a node");
  GraphInput unr_in;
  unr_in.add_to(unravel_cmd, false);
  std::string unr_node;
  std::size_t unr_depth = 1;
  unravel_cmd->add_option("--node", unr_node, "root node")->required();
  unravel_cmd->add_option("--depth", unr_depth, "depth L");

  // fixture
  auto* fixture_cmd = app.add_subcommand("fixture", "built-in counterexample graphs");
  fixture_cmd->require_subcommand(1);
  auto* fixture_list = fixture_cmd->add_subcommand("list", "list fixtures and claims");
  auto* fixture_export = fixture_cmd->add_subcommand("export", "write fixture TSV files");
  std::string fixture_name, fixture_dir = ".";
  fixture_export->add_option("name", fixture_name, "ga | gb | gc | gd")->required();
  fixture_export->add_option("--dir", fixture_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*run) {
      const TestId test = parse_test_id(run_test_name);
      const KnowledgeGraph g = run_in.load(arity(test) == 2);
      const Horizon horizon = run_iters ? Horizon::Iterations(*run_iters) : Horizon::Stabilize();
      RunOptions options;
      options.waive_tnd = run_waive;
      const WLTrace trace = run_test(test, g, history_from(run_history), horizon, options);
      if (run_out == "json") {
        json report{{"schema", 1}, {"command", command_line(argc, argv)}, {"trace", trace_to_json(trace)}};
        std::cout << report.dump(2) << "\n";
      } else {
        for (std::size_t t = 0; t < trace.colorings.size(); ++t) {
          std::cout << "t=" << t << ": ";
          print_partition(std::cout, g, trace.arity(), trace.colorings[t]);
        }
        if (trace.stabilized_at) std::cout << "stabilized at " << *trace.stabilized_at << "\n";
        else std::cout << "not stabilized within the horizon\n";
      }
      return kExitOk;
    }

    if (*verify) {
      VerifyOptions options;
      options.seed = seed;
      options.trials = trials;
      options.node_budget = node_budget();
      const auto checks = run_suite(suite, options);
      const json report = make_report(command_line(argc, argv), options, checks);
      std::cout << report.dump(2) << "\n";
      if (!verify_out.empty()) write_text(verify_out, report.dump(2) + "\n");
      for (const auto& c : checks) {
        std::cerr << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
      }
      return report.at("passed").get<bool>() ? kExitOk : kExitViolation;
    }

    if (*logic) {
      const LogicArity arity = arity_name == "binary" ? LogicArity::kBinary : LogicArity::kUnary;
      if (*logic_translate) {
        const Formula phi = read_formula(formula_file, formula_expr, arity);
        const Formula out = arity == LogicArity::kBinary ? translate_rgfo3_to_gml(phi)
                                                         : translate_gml_to_rgfo3(phi);
        std::cout << to_string(out.root) << "\n";
        return kExitOk;
      }
      if (*logic_compile) {
        const Formula phi = read_formula(formula_file, formula_expr, LogicArity::kUnary);
        std::vector<std::string> colors = atoms_of(phi.root);
        std::vector<std::string> relations = relations_of(phi.root);
        if (!compile_in.graph.empty() || !compile_in.fixture.empty()) {
          const KnowledgeGraph g = compile_in.load(false);
          colors = g.node_coloring().labels;
          relations = g.relation_names();
        }
        const CompiledClassifier c = compile_gml_to_rmpnn(phi, colors, relations);
        json subformulas = json::array();
        for (const auto& f : c.subformulas.items) subformulas.push_back(to_string(f));
        json report{{"schema", 1},
                    {"command", command_line(argc, argv)},
                    {"formula", to_string(phi.root)},
                    {"subformulas", std::move(subformulas)},
                    {"network", to_json(c.spec)}};
        std::cout << report.dump(2) << "\n";
        return kExitOk;
      }
      // eval
      const Formula phi = read_formula(formula_file, formula_expr, arity);
      const KnowledgeGraph g = eval_in.load(arity == LogicArity::kBinary);
      json rows = json::array();
      if (arity == LogicArity::kBinary) {
        const std::vector<bool> table = eval_rgfo3_table(g, phi);
        const std::size_t n = g.num_nodes();
        if (pairs == "all") {
          for (std::size_t p = 0; p < table.size(); ++p) {
            rows.push_back({{"pair", {g.node_name(static_cast<NodeId>(p / n)), g.node_name(static_cast<NodeId>(p % n))}},
                            {"value", static_cast<bool>(table[p])}});
          }
        } else {
          const auto [u, v] = parse_pair(g, pairs);
          rows.push_back({{"pair", {g.node_name(u), g.node_name(v)}}, {"value", static_cast<bool>(table[u * n + v])}});
        }
      } else {
        const std::vector<bool> table = eval_gml_table(g, phi);
        for (NodeId v = 0; v < g.num_nodes(); ++v) {
          if (pairs != "all" && g.node_name(v) != pairs) continue;
          rows.push_back({{"node", g.node_name(v)}, {"value", static_cast<bool>(table[v])}});
        }
        if (pairs != "all" && rows.empty()) throw LookupError("unknown node '" + pairs + "'");
      }
      json report{{"schema", 1},
                  {"command", command_line(argc, argv)},
                  {"formula", to_string(phi.root)},
                  {"arity", arity_name},
                  {"truth", std::move(rows)}};
      std::cout << report.dump(2) << "\n";
      return kExitOk;
    }

    if (*simulate) {
      const HistoryFunction f = history_from(sim_history);
      json report{{"schema", 1}, {"command", command_line(argc, argv)}};
      json partitions = json::array();
      if (*sim_rwl1) {
        const KnowledgeGraph g = sim_in.load(false);
        const Rwl1Simulator sim = build_rwl1_simulator(g, sim_layers, f);
        const FeatureTable<Rational> h = rmpnn_forward<Rational>(g, sim.spec, sim.initial_features);
        json x = json::array();
        for (const auto& v : sim.initial_features) {
          json row = json::array();
          for (const auto& e : v) row.push_back(rational_to_json(e));
          x.push_back(std::move(row));
        }
        for (std::size_t t = 0; t <= sim_layers; ++t) {
          json cls = json::array();
          for (const auto& c : classes(partition_of(h, t))) {
            json names = json::array();
            for (std::size_t i : c) names.push_back(index_name(g, 1, i));
            cls.push_back(std::move(names));
          }
          partitions.push_back(std::move(cls));
        }
        report["network"] = to_json(sim.spec);
        report["initial_features"] = std::move(x);
      } else {
        const KnowledgeGraph g = sim_in.load(true);
        const CmpnnSimulator sim = build_cmpnn_simulator(g, sim_layers, f);
        const FeatureTable<Rational> h = cmpnn_table<Rational>(g, sim.spec, 0);
        for (std::size_t t = 0; t <= sim_layers; ++t) {
          json cls = json::array();
          for (const auto& c : classes(partition_of(h, t))) {
            json names = json::array();
            for (std::size_t i : c) names.push_back(index_name(g, 2, i));
            cls.push_back(std::move(names));
          }
          partitions.push_back(std::move(cls));
        }
        report["network"] = to_json(sim.spec);
      }
      report["partitions"] = std::move(partitions);
      std::cout << report.dump(2) << "\n";
      return kExitOk;
    }

    if (*unravel_cmd) {
      const KnowledgeGraph g = unr_in.load(false);
      const UnravellingTree tree = unravel(g, g.node(unr_node), unr_depth, node_budget());
      json nodes = json::array();
      for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
        json path = json::array();
        for (NodeId v : tree.nodes[i].path) path.push_back(g.node_name(v));
        json entry{{"path", std::move(path)}, {"color", tree.color_labels[tree.nodes[i].color]}};
        if (i > 0) {
          entry["parent"] = tree.nodes[i].parent;
          entry["relation"] = tree.relation_names[tree.nodes[i].relation];
        }
        nodes.push_back(std::move(entry));
      }
      json report{{"schema", 1},
                  {"command", command_line(argc, argv)},
                  {"nodes", std::move(nodes)},
                  {"code", canonical_tree_code(tree)}};
      std::cout << report.dump(2) << "\n";
      return kExitOk;
    }

    if (*fixture_cmd) {
      if (*fixture_list) {
        for (const auto& name : fixture_names()) {
          const Fixture fx = fixture(name);
          std::cout << name << ": " << fx.graph.num_nodes() << " nodes, " << fx.graph.facts().size()
                    << " facts\n";
          for (const auto& c : fx.claims) std::cout << "  " << describe(c) << "\n";
        }
        return kExitOk;
      }
      const Fixture fx = fixture(fixture_name);
      const std::filesystem::path dir(fixture_dir);
      std::filesystem::create_directories(dir);
      write_text(dir / (fx.name + ".tsv"), format_triples(fx.graph));
      write_text(dir / (fx.name + ".colors.tsv"), format_node_colors(fx.graph));
      write_text(dir / (fx.name + ".pairs.tsv"), format_pair_colors(fx.graph));
      std::cout << "wrote " << (dir / (fx.name + ".tsv")).string() << ", "
                << (dir / (fx.name + ".colors.tsv")).string() << ", "
                << (dir / (fx.name + ".pairs.tsv")).string() << "\n";
      return kExitOk;
    }
  } catch (const relwl::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
