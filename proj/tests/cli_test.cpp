// Copyright 2026 The iccg Authors
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

#include "iccg/cli.hpp"

#include <gtest/gtest.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace iccg::cli {
namespace {

namespace fs = std::filesystem;

struct Invocation {
  int code = -1;
  std::string out;
  std::string err;
};

Invocation run(std::vector<std::string> args) {
  args.insert(args.begin(), "iccg");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Invocation r;
  r.code = dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("iccg_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string gen_mini(std::uint64_t seed = 4) {
    const std::string p = path("inst.json");
    const Invocation r = run({"gen", "--seed", std::to_string(seed), "--surgeries", "4", "--ors", "2", "-o", p});
    EXPECT_EQ(r.code, 0) << r.err;
    return p;
  }

  fs::path dir_;
};

TEST_F(CliTest, GenOutputFeedsSolveAndValidate) {
  const std::string inst = gen_mini();
  const Invocation v = run({"validate", inst});
  EXPECT_EQ(v.code, 0) << v.err;
  EXPECT_TRUE(nlohmann::json::parse(v.out).at("ok").get<bool>());
  const Invocation s = run({"solve", inst, "--method", "iccg", "--eps", "0.02", "--eps-tilde", "0.015", "--eps-mp", "0.02",
                     "--alpha", "0.8", "--report", path("rep.json"), "--log", path("it.csv")});
  ASSERT_EQ(s.code, 0) << s.err;
  const auto rep = nlohmann::json::parse(slurp(path("rep.json")));
  EXPECT_EQ(rep.at("termination"), "Converged");
  EXPECT_EQ(rep.at("method"), "iccg");
  EXPECT_EQ(rep.at("schedule").at("room_of").size(), 4u);
  const std::string log = slurp(path("it.csv"));
  EXPECT_EQ(log.rfind(kIterationCsvHeader, 0), 0u);
  EXPECT_EQ(static_cast<std::size_t>(std::count(log.begin(), log.end(), '\n')),
            rep.at("iterations").size() + 1);
}

TEST_F(CliTest, GenIsDeterministic) {
  const Invocation a = run({"gen", "--seed", "8", "--surgeries", "9", "--ors", "3", "--pcts", "10-90"});
  const Invocation b = run({"gen", "--seed", "8", "--surgeries", "9", "--ors", "3", "--pcts", "10-90"});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(nlohmann::json::parse(a.out).at("surgeries").size(), 9u);
}

TEST_F(CliTest, TerminationConditionIsAUsageError) {
  const std::string inst = gen_mini();
  const Invocation r = run({"solve", inst, "--eps-tilde", "0.02", "--eps", "0.02"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("eps/(1+eps)"), std::string::npos) << r.err;
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run({"solve", "x.json", "--bogus"}).code, 1);
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({"solve", "--method", "bd", "x.json"}).code, 1);
  const Invocation missing = run({"solve", path("nope.json")});
  EXPECT_EQ(missing.code, 1);
  EXPECT_NE(missing.err.find("cannot open"), std::string::npos);
  const Invocation bad_gen = run({"gen", "--surgeries", "2", "--ors", "3"});
  EXPECT_EQ(bad_gen.code, 1);
  EXPECT_NE(bad_gen.err.find("SpecError"), std::string::npos);
}

TEST_F(CliTest, HelpListsEveryEngineFlag) {
  const Invocation r = run({"solve", "--help"});
  EXPECT_EQ(r.code, 0);
  for (const char* flag : {"--seed", "--eps", "--eps-tilde", "--eps-mp", "--alpha", "--tau", "--beta",
                           "--exploit-freq", "--conservative-lb", "--method"}) {
    if (std::string(flag) == "--seed") continue;  // gen and validate only
    EXPECT_NE(r.out.find(flag), std::string::npos) << flag;
  }
  EXPECT_NE(run({"gen", "--help"}).out.find("--seed"), std::string::npos);
}

TEST_F(CliTest, TwoStageProblemFile) {
  const std::string p = path("toy.json");
  std::ofstream(p) << R"({"c":[2,3],"q":[1,0.5,10],"Tmat":[[0,0],[1,0],[0,1]],
    "W":[[1,1,1],[-1,0,0],[0,-1,0]],"C":[[-1],[0],[0]],"h":[0,0,0],
    "first_stage":{"A":[[1,1]],"b":[10],"sense":["<="],"integer":[0,1],"bounds":[[0,6],[0,6]]},
    "uncertainty":{"finite":[[2],[5],[7],[9]]}})";
  for (const char* method : {"ccg", "iccg"}) {
    const Invocation r = run({"solve", p, "--method", method});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rep = nlohmann::json::parse(r.out);
    // Cheapest is 6 units at facility one (cost 3 each) and 3 at two (3.5).
    EXPECT_NEAR(rep.at("final_value").get<double>(), 28.5, 1e-9);
    EXPECT_FALSE(rep.contains("schedule"));
  }
  EXPECT_EQ(run({"validate", p}).code, 0);
}

TEST_F(CliTest, SolveFailureExitsTwo) {
  const std::string p = path("empty_x.json");
  std::ofstream(p) << R"({"c":[1],"q":[1],"Tmat":[[1]],"W":[[1]],"C":[[-1]],"h":[0],
    "first_stage":{"A":[[1]],"b":[5],"sense":[">="],"integer":[],"bounds":[[0,1]]},
    "uncertainty":{"finite":[[1]]}})";
  const Invocation r = run({"solve", p, "--method", "ccg"});
  EXPECT_EQ(r.code, 2) << r.err;
}

TEST_F(CliTest, ValidateFlagsBrokenInstance) {
  const std::string p = path("bad.json");
  std::ofstream(p) << R"({"surgeries":[{"mu":50,"nu":5,"dlo":60,"dhi":80}],"num_ors":1,"c_f":1,"c_v":0.1,"T":480})";
  const Invocation r = run({"validate", p});
  EXPECT_EQ(r.code, 2);
  EXPECT_FALSE(nlohmann::json::parse(r.out).at("ok").get<bool>());
}

TEST_F(CliTest, BenchThenProfile) {
  const std::string matrix = path("m.json");
  std::ofstream(matrix) << R"({"wall_cap_s": 30, "runs": [
    {"run_id": "t", "methods": ["ccg", "iccg"], "seeds": [1, 2],
     "spec": {"num_surgeries": 4, "num_ors": 2}}]})";
  const Invocation b = run({"bench", matrix, "-o", path("res.csv")});
  ASSERT_EQ(b.code, 0) << b.err;
  const bench::ResultsTable t = bench::parse_results_csv(slurp(path("res.csv")));
  ASSERT_EQ(t.rows.size(), 4u);
  EXPECT_EQ(*t.wall_cap_s, 30.0);
  for (const bench::ResultRow& r : t.rows) EXPECT_EQ(r.status, "Converged");
  const Invocation p = run({"profile", path("res.csv"), "--metric", "time", "--csv", path("c.csv"), "--svg", path("p.svg")});
  ASSERT_EQ(p.code, 0) << p.err;
  const std::string svg = slurp(path("p.svg"));
  EXPECT_NE(svg.find("<polyline"), std::string::npos);
  const std::string curves = slurp(path("c.csv"));
  EXPECT_NE(curves.find("ccg,time"), std::string::npos);
  EXPECT_NE(curves.find("iccg,time"), std::string::npos);
  const Invocation g = run({"profile", path("res.csv"), "--metric", "gap", "--thresholds", "0,0.01,0.05"});
  ASSERT_EQ(g.code, 0) << g.err;
  EXPECT_EQ(std::count(g.out.begin(), g.out.end(), '\n'), 1 + 2 * 3);
  EXPECT_EQ(run({"profile", path("res.csv"), "--thresholds", "0,x"}).code, 1);
}

}  // namespace
}  // namespace iccg::cli
