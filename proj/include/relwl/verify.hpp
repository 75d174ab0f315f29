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
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "relwl/unravel.hpp"
#include "relwl/wl.hpp"

namespace relwl {

struct CheckResult {
  std::string name;
  bool passed = true;
  std::size_t cases = 0;     // graphs / formulas / claims examined
  std::string detail;        // short human summary
  nlohmann::json witness;    // null unless failed
  double seconds = 0.0;
};

struct VerifyOptions {
  std::uint64_t seed = 42;
  // Random instances per check; unset means the per-check defaults below.
  std::optional<std::size_t> trials;
  std::size_t node_budget = kDefaultNodeBudget;
};

// Collects every WL trace produced by the other checks and reports the first
// iteration whose coloring fails to refine its predecessor.
class TraceAudit {
 public:
  void record(const WLTrace& trace, const nlohmann::json& context);
  CheckResult result() const;

 private:
  std::size_t traces_ = 0;
  bool failed_ = false;
  nlohmann::json witness_;
};

// Default instance counts.
inline constexpr std::size_t kReductionGraphs = 200;
inline constexpr std::size_t kHistoryGraphs = 200;
inline constexpr std::size_t kHierarchyGraphs = 200;
inline constexpr std::size_t kRwl1SimulationGraphs = 50;
inline constexpr std::size_t kCmpnnSimulationGraphs = 30;
inline constexpr std::size_t kUpperBoundNetworks = 100;
inline constexpr std::size_t kLogicFormulas = 100;
inline constexpr std::size_t kLogicGraphs = 20;
inline constexpr std::size_t kUnravellingGraphs = 50;

CheckResult check_reduction(std::uint64_t seed, std::size_t graphs, TraceAudit& audit);
CheckResult check_history(std::uint64_t seed, std::size_t graphs, TraceAudit& audit);
CheckResult check_hierarchy(std::uint64_t seed, std::size_t graphs, TraceAudit& audit);
CheckResult check_rwl1_simulation(std::uint64_t seed, std::size_t graphs, TraceAudit& audit);
CheckResult check_cmpnn_simulation(std::uint64_t seed, std::size_t graphs, TraceAudit& audit);
CheckResult check_upper_bound(std::uint64_t seed, std::size_t networks, TraceAudit& audit);
CheckResult check_fixtures(TraceAudit& audit);
CheckResult check_logic_translations(std::uint64_t seed, std::size_t formulas, std::size_t graphs);
CheckResult check_compilation(std::uint64_t seed, std::size_t formulas, std::size_t graphs);
CheckResult check_classify_via_compile(std::uint64_t seed, std::size_t formulas,
                                       std::size_t graphs);
CheckResult check_unravelling(std::uint64_t seed, std::size_t graphs, std::size_t node_budget,
                              TraceAudit& audit);

const std::vector<std::string>& suite_names();  // reduction ... fixtures, all

// Runs a named suite. The monotonicity check is appended to every suite that
// records traces. Throws ValidationError for unknown suite names.
std::vector<CheckResult> run_suite(std::string_view suite, const VerifyOptions& options);

// {schema: 1, command, seed, trials, passed, checks: [...], timings: {...}}.
// Everything except "timings" is a deterministic function of the inputs.
nlohmann::json make_report(const std::string& command, const VerifyOptions& options,
                           const std::vector<CheckResult>& checks);

}  // namespace relwl
