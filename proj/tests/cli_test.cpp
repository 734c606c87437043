// Copyright 2026 The Gallant Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gallant_cli.hpp"

namespace gallant {
namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "gallant");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(GALLANT_DATA_DIR) + "/" + name; }

std::string temp_spec(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("gallant_cli_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

TEST(Cli, SolveFigure1) {
  const auto r = run({"solve", data("three_morsels.game"), "--witness"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "1: a b\n2: c\nleftover:\nwitness: a c b\n");
}

TEST(Cli, SolveJson) {
  const auto r = run({"solve", data("leftover.game"), "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = cli::json::parse(r.out);
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["command"], "solve");
  EXPECT_EQ(j["digest"].get<std::string>().size(), 16u);
  EXPECT_EQ(j["result"]["division"]["leftover"], cli::json::array({"a"}));
  EXPECT_TRUE(j["elapsed_ms"].is_number());
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"solve", data("no_such_file.game")}).code, 3);
  EXPECT_EQ(run({"solve", temp_spec("bad.game", "players 1\nmorsels a\nturns 1Q\n")}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  const auto big = temp_spec("big.game", "players 1\nmorsels a b c d e f g h\nrank 1: a b c d e f g h\nturns 1K\n");
  EXPECT_EQ(run({"verify", big}).code, 4);
  ::setenv("GALLANT_ORACLE_CAP", "8", 1);
  EXPECT_EQ(run({"verify", big}).code, 0);
  ::unsetenv("GALLANT_ORACLE_CAP");
  EXPECT_EQ(run({"verify", "--random", "1", "3", "n=9,k=2"}).code, 4);
}

TEST(Cli, ParseErrorNamesTheLine) {
  const auto r = run({"solve", temp_spec("dup.game", "players 1\nmorsels a b\nenjoy 1: 1 1\nturns 1K\n")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;
}

TEST(Cli, VerifySpecAndRandom) {
  auto r = run({"verify", data("three_morsels.game")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "pass: 2 optimal plays, 1 division\n");
  r = run({"verify", "--random", "42", "60", "n=5,k=3", "--jobs", "2"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out, "pass: 60/60 instances\n");
}

TEST(Cli, VerifyNegativeControlFails) {
  const auto r = run({"verify", "--random", "42", "200", "n=6,k=3", "--no-reversal", "--json"});
  EXPECT_EQ(r.code, 1);
  const auto j = cli::json::parse(r.out);
  EXPECT_GT(j["result"]["failed"].get<int>(), 0);
  const auto text = run({"verify", "--random", "42", "200", "n=6,k=3", "--no-reversal"});
  EXPECT_NE(text.out.find("--- counterexample spec ---\nplayers"), std::string::npos);
}

TEST(Cli, Group) {
  const auto r = run({"group", data("three_speakers.group"), "--check-conflict-free"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out,
            "picks: b a c\n"
            "turn 1: speaker 1, sharers 2 3, pick b\n"
            "turn 2: speaker 2, sharers 1 3, pick a\n"
            "turn 3: speaker 3, sharers 1 2, pick c\n"
            "partake:\n"
            "1: a c\n"
            "2: b c\n"
            "3: a b\n"
            "conflict-free: true\n");
  const auto short_speakers =
      temp_spec("short.group", "players 2\nmorsels a b c\nrank 1: a b c\nrank 2: c b a\nspeakers 1 2\n");
  EXPECT_EQ(run({"group", short_speakers}).code, 2);
  const auto j = cli::json::parse(run({"group", data("three_speakers.group"), "--json"}).out);
  EXPECT_EQ(j["result"]["picks"], cli::json::array({"b", "a", "c"}));
}

TEST(Cli, Kc) {
  auto r = run({"kc", data("kc_three_morsels.game"), "--oracle"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "1: a b\n2: c\nagree: true\n");
  r = run({"kc", "--exhaustive", "4", "--oracle"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "instances: 9216\nagree: true\n");
  r = run({"kc", temp_spec("two.game", "players 2\nmorsels a b\nrank 1: a b\nrank 2: a b\nturns 2K 1K\n")});
  EXPECT_EQ(r.out, "1: a\n2: b\n");
  EXPECT_EQ(run({"kc", data("mixed6.game")}).code, 2);
}

TEST(Cli, GenIsDeterministicAndReparses) {
  const auto a = run({"gen", "--seed", "9", "--n", "7", "--k", "3", "--max-mult", "2"});
  const auto b = run({"gen", "--seed", "9", "--n", "7", "--k", "3", "--max-mult", "2"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NO_THROW(parse_game_spec(a.out));
  const auto g = run({"gen", "--seed", "9", "--n", "5", "--k", "3", "--group"});
  EXPECT_NO_THROW(parse_group_spec(g.out));
  EXPECT_EQ(run({"gen", "--n", "3", "--m", "4"}).code, 2);
}

TEST(Cli, BenchJson) {
  const auto r = run({"bench", "--n", "2000", "--k", "3", "--reps", "1", "--json"});
  ASSERT_EQ(r.code, 0);
  const auto j = cli::json::parse(r.out);
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["result"]["n"], 2000);
  EXPECT_TRUE(j["result"]["ratio"].is_number());
}

}  // namespace
}  // namespace gallant
