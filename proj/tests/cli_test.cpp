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

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#ifndef RELWL_CLI_PATH
#error "RELWL_CLI_PATH must name the relwl binary"
#endif

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Output {
  int code = -1;
  std::string out;
};

// Runs the CLI with stderr discarded; returns the exit code and stdout.
Output relwl(const std::string& args) {
  const std::string cmd = std::string(RELWL_CLI_PATH) + " " + args + " 2>/dev/null";
  Output o;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return o;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) o.out.append(buf, got);
  const int status = pclose(pipe);
  o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("relwl_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  void write(const std::string& name, const std::string& text) const {
    std::ofstream(dir_ / name) << text;
  }

  fs::path dir_;
};

TEST_F(Cli, FixtureListAndExport) {
  const Output list = relwl("fixture list");
  EXPECT_EQ(list.code, 0);
  for (const char* name : {"ga", "gb", "gc", "gd"}) EXPECT_NE(list.out.find(name), std::string::npos);
  EXPECT_EQ(relwl("fixture export gb --dir " + path("")).code, 0);
  EXPECT_TRUE(fs::exists(path("gb.tsv")));
  EXPECT_TRUE(fs::exists(path("gb.pairs.tsv")));
  // Exported files reproduce the fixture's run.
  const Output a = relwl("run --test rwl2 --fixture gb --stabilize --out json");
  const Output b = relwl("run --test rwl2 --graph " + path("gb.tsv") + " --colors " + path("gb.colors.tsv") +
                         " --pair-colors " + path("gb.pairs.tsv") + " --stabilize --out json");
  ASSERT_EQ(a.code, 0);
  ASSERT_EQ(b.code, 0);
  EXPECT_EQ(json::parse(a.out).at("trace").at("partitions"), json::parse(b.out).at("trace").at("partitions"));
}

TEST_F(Cli, RunTraceJson) {
  const Output o = relwl("run --test rawl2+ --fixture ga --stabilize --out json");
  ASSERT_EQ(o.code, 0);
  const json j = json::parse(o.out).at("trace");
  EXPECT_EQ(j.at("test"), "rawl2+");
  EXPECT_TRUE(j.contains("stabilized_at"));
  EXPECT_EQ(j.at("partitions").size(), j.at("iterations").get<std::size_t>() + 1);
  EXPECT_EQ(relwl("run --test rwl1 --fixture gb --iters 2 --out text").code, 0);
}

TEST_F(Cli, RunFromTriples) {
  write("g.tsv", "a\tr\tb\nb\tr\tc\n");
  const Output o = relwl("run --test rwl1 --graph " + path("g.tsv") + " --iters 3 --out json");
  ASSERT_EQ(o.code, 0);
  EXPECT_EQ(json::parse(o.out).at("trace").at("iterations"), 3);
  EXPECT_EQ(relwl("run --test rawl2 --graph " + path("g.tsv") + " --pair-mode diagonal --stabilize").code, 0);
}

TEST_F(Cli, ErrorsExitWithTwo) {
  write("bad.tsv", "a\tr\n");
  EXPECT_EQ(relwl("").code, 2);
  EXPECT_EQ(relwl("run --test rwl9 --fixture ga").code, 2);
  EXPECT_EQ(relwl("run --test rwl1 --graph " + path("missing.tsv")).code, 2);
  EXPECT_EQ(relwl("run --test rwl1 --graph " + path("bad.tsv")).code, 2);
  EXPECT_EQ(relwl("run --test rwl1 --fixture nope").code, 2);
  EXPECT_EQ(relwl("logic eval --fixture ga --expr 'DIA[r1,0](A:eq)' --arity binary").code, 2);
  EXPECT_EQ(relwl("verify --suite nonsense").code, 2);
  EXPECT_EQ(relwl("verify --suite fixtures --trials 0").code, 2);
}

TEST_F(Cli, VerifyReportsAreReproducible) {
  ASSERT_EQ(relwl("verify --suite all --seed 7 --trials 5 --report " + path("a.json")).code, 0);
  ASSERT_EQ(relwl("verify --suite all --seed 7 --trials 5 --report " + path("b.json")).code, 0);
  json a = json::parse(slurp(path("a.json")));
  json b = json::parse(slurp(path("b.json")));
  EXPECT_TRUE(a.at("passed").get<bool>());
  EXPECT_EQ(a.at("seed"), 7);
  EXPECT_EQ(a.at("trials"), 5);
  for (json* j : {&a, &b}) {
    j->erase("timings");
    j->erase("command");
  }
  EXPECT_EQ(a.dump(), b.dump());
}

TEST_F(Cli, LogicCommands) {
  const Output e = relwl("logic eval --fixture ga --expr 'DIA[r1,1](A:eq)' --arity binary --pairs v,u");
  EXPECT_EQ(e.code, 0);
  EXPECT_NE(e.out.find("true"), std::string::npos);
  const Output c = relwl("logic compile --expr 'DIA[r,2](A:c)' --arity unary");
  ASSERT_EQ(c.code, 0);
  EXPECT_EQ(json::parse(c.out).at("network").at("activation"), "truncated-relu");
  const Output t = relwl("logic translate --expr '!A:a' --arity binary");
  EXPECT_EQ(t.code, 0);
  EXPECT_NE(t.out.find("!A:a"), std::string::npos);
}

TEST_F(Cli, SimulateAndUnravel) {
  const Output s = relwl("simulate rwl1 --fixture gb --layers 2");
  ASSERT_EQ(s.code, 0);
  EXPECT_TRUE(json::parse(s.out).contains("network"));
  EXPECT_EQ(relwl("simulate cmpnn --fixture ga --layers 1").code, 0);
  EXPECT_EQ(relwl("unravel --fixture gb --node u\\' --depth 2").code, 0);
  EXPECT_EQ(relwl("unravel --fixture gb --node nowhere --depth 2").code, 2);
  EXPECT_EQ(relwl("unravel --fixture gb --node u --depth 40").code, 0);
}

}  // namespace
