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

// Runs every acceptance criterion once and prints one line per criterion.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "relwl/verify.hpp"

#ifndef RELWL_CLI_PATH
#error "RELWL_CLI_PATH must name the relwl binary"
#endif

namespace {

using relwl::CheckResult;

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<std::vector<CheckResult>()> run;
};

constexpr std::uint64_t kSeed = 42;

}  // namespace

int main() {
  relwl::TraceAudit audit;
  const std::vector<Criterion> criteria = {
      {1, "reduction rawl2(G) = rwl1(G^2)", 30,
       [&] { return std::vector{relwl::check_reduction(kSeed, relwl::kReductionGraphs, audit)}; }},
      {2, "history independence", 10,
       [&] { return std::vector{relwl::check_history(kSeed, relwl::kHistoryGraphs, audit)}; }},
      {4, "rwl1 simulation", 60,
       [&] {
         return std::vector{relwl::check_rwl1_simulation(kSeed, relwl::kRwl1SimulationGraphs, audit)};
       }},
      {5, "C-MPNN lower bound", 60,
       [&] {
         return std::vector{relwl::check_cmpnn_simulation(kSeed, relwl::kCmpnnSimulationGraphs, audit)};
       }},
      {6, "C-MPNN upper bound", 60,
       [&] { return std::vector{relwl::check_upper_bound(kSeed, relwl::kUpperBoundNetworks, audit)}; }},
      {7, "fixture verdicts", 1, [&] { return std::vector{relwl::check_fixtures(audit)}; }},
      {8, "hierarchy", 30,
       [&] { return std::vector{relwl::check_hierarchy(kSeed, relwl::kHierarchyGraphs, audit)}; }},
      {9, "logic translations", 60,
       [&] {
         return std::vector{
             relwl::check_logic_translations(kSeed, relwl::kLogicFormulas, relwl::kLogicGraphs)};
       }},
      {10, "compilation soundness", 60,
       [&] {
         return std::vector{
             relwl::check_compilation(kSeed, relwl::kLogicFormulas, relwl::kLogicGraphs),
             relwl::check_classify_via_compile(kSeed, relwl::kLogicFormulas, relwl::kLogicGraphs)};
       }},
      {11, "unravelling correspondence", 30,
       [&] {
         return std::vector{relwl::check_unravelling(kSeed, relwl::kUnravellingGraphs,
                                                     relwl::kDefaultNodeBudget, audit)};
       }},
      {3, "monotone refinement of every recorded trace", 1,
       [&] { return std::vector{audit.result()}; }},
      {12, "relwl verify --suite all --seed 42 --trials 100", 300,
       [&] {
         CheckResult r;
         r.name = "cli";
         const std::string cmd = std::string(RELWL_CLI_PATH) +
                                 " verify --suite all --seed 42 --trials 100 > /dev/null 2>&1";
         const int status = std::system(cmd.c_str());
         r.passed = status == 0;
         r.cases = 1;
         r.detail = "exit status " + std::to_string(status);
         return std::vector{r};
       }},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    bool passed = true;
    std::string detail;
    try {
      for (const CheckResult& r : c.run()) {
        passed = passed && r.passed;
        if (!detail.empty()) detail += "; ";
        detail += r.name + ": " + std::to_string(r.cases) + " cases";
        if (!r.passed) detail += ", " + r.detail + " " + r.witness.dump();
      }
    } catch (const std::exception& e) {
      passed = false;
      detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_budget = seconds < c.budget_seconds;
    if (!passed || !in_budget) ++failures;
    std::printf("[%s] criterion %2d  %-46s %8.3f s / budget %5.0f s  (%s)\n",
                passed && in_budget ? "PASS" : "FAIL", c.id, c.name, seconds, c.budget_seconds,
                detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
