// Copyright 2026 The Intransic Authors.
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

// End-to-end checks of the intransic binary.

#include <gtest/gtest.h>

#include <regex>

#include "intransic/intransic.hpp"
#include "test_util.hpp"

namespace intransic {
namespace {

using testing::CommandResult;
using testing::run_command;

const std::string kData = INTRANSIC_DATA_DIR;

CommandResult cli(const std::string& args) {
  return run_command(std::string(INTRANSIC_CLI) + " " + args);
}

double number_after(const std::string& text, const std::string& key) {
  const std::regex re(key + ": ([-0-9.]+)");
  std::smatch m;
  if (!std::regex_search(text, m, re)) return -999.0;
  return std::stod(m[1]);
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override { dir_ = testing::scratch_dir("cli"); }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::filesystem::path dir_;
};

TEST_F(CliTest, StatsToy) {
  const auto r = cli("stats " + kData + "/toy.csv");
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_NE(r.output.find("true"), std::string::npos);
  EXPECT_NE(r.output.find("10.00%"), std::string::npos);
  EXPECT_NE(r.output.find("5/5"), std::string::npos);
}

TEST_F(CliTest, StatsRpsJson) {
  const auto r = cli("stats " + kData + "/rps.csv --format json");
  ASSERT_EQ(r.exit_code, 0);
  const auto j = nlohmann::json::parse(r.output);
  EXPECT_EQ(j["is_intrans"], true);
  EXPECT_EQ(j["triangles"], 1);
  EXPECT_DOUBLE_EQ(j["intrans_at_3"].get<double>(), 0.5);
  EXPECT_EQ(j["player_intrans_at_3"], 3);
  EXPECT_EQ(j["players"], 3);
}

TEST_F(CliTest, StatsDag) {
  const auto r = cli("stats " + kData + "/dag.csv --format json");
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.output)["is_intrans"], false);
}

TEST_F(CliTest, UsageAndIoErrorsExitTwo) {
  EXPECT_EQ(cli("stats /nonexistent/file.csv").exit_code, 2);
  EXPECT_EQ(cli("").exit_code, 2);
  EXPECT_EQ(cli("frobnicate").exit_code, 2);
  EXPECT_EQ(cli("stats " + kData + "/toy.csv --format xml").exit_code, 2);
  EXPECT_EQ(cli("train " + kData + "/rps.csv --model general --dim 1 --out " + path("m.json"))
                .exit_code,
            2);
  EXPECT_EQ(cli("train " + kData + "/rps.csv --model elo --out " + path("m.json")).exit_code, 2);
  EXPECT_EQ(cli("train " + kData + "/rps.csv --lr -1 --out " + path("m.json")).exit_code, 2);
  EXPECT_EQ(cli("synth --cycles 2 --out " + path("s.csv")).exit_code, 2);
  EXPECT_EQ(cli("synth --noise 0.5 --out " + path("s.csv")).exit_code, 2);
  EXPECT_EQ(cli("cv " + kData + "/rps.csv --k 2").exit_code, 2);
  EXPECT_EQ(cli("evaluate /nonexistent/model.json " + kData + "/rps.csv").exit_code, 2);
}

TEST_F(CliTest, MalformedDatasetExitTwo) {
  {
    std::ofstream out(path("bad.csv"));
    out << "a,b,n_a,n_b\nx,y,-1,2\n";
  }
  EXPECT_EQ(cli("stats " + path("bad.csv")).exit_code, 2);
}

TEST_F(CliTest, TrainGeneralAndEvaluate) {
  const auto train = cli("train " + kData + "/rps.csv --model general --dim 2 --seed 3 --out " +
                         path("g.json") + " --trace " + path("trace.csv"));
  ASSERT_EQ(train.exit_code, 0);
  EXPECT_DOUBLE_EQ(number_after(train.output, "train accuracy"), 1.0);
  EXPECT_LT(number_after(train.output, "objective"), 0.0);
  EXPECT_EQ(testing::read_file(path("trace.csv")).rfind("epoch,objective,val_accuracy\n", 0),
            0u);

  const auto eval = cli("evaluate " + path("g.json") + " " + kData + "/rps.csv");
  ASSERT_EQ(eval.exit_code, 0);
  EXPECT_DOUBLE_EQ(number_after(eval.output, "accuracy"), 1.0);

  const MatchupModel m = load_model(path("g.json"));
  EXPECT_EQ(m.kind, ModelKind::kGeneral);
  EXPECT_EQ(m.dim(), 2);
}

TEST_F(CliTest, TrainBtIsCapped) {
  const auto train =
      cli("train " + kData + "/rps.csv --model bt --out " + path("bt.json"));
  ASSERT_EQ(train.exit_code, 0);
  EXPECT_LE(number_after(train.output, "train accuracy"), 2.0 / 3.0 + 1e-6);
}

TEST_F(CliTest, NaiveCheckpointOnToy) {
  ASSERT_EQ(cli("train " + kData + "/toy.csv --model naive --out " + path("n.json")).exit_code, 0);
  const auto eval = cli("evaluate " + path("n.json") + " " + kData + "/toy.csv");
  ASSERT_EQ(eval.exit_code, 0);
  EXPECT_NEAR(number_after(eval.output, "accuracy"), 0.6667, 1e-4);
}

TEST_F(CliTest, EvaluateMismatchExitsOne) {
  ASSERT_EQ(cli("train " + kData + "/rps.csv --model bt --out " + path("bt.json")).exit_code, 0);
  EXPECT_EQ(cli("evaluate " + path("bt.json") + " " + kData + "/toy.csv").exit_code, 1);
}

TEST_F(CliTest, CrossValidateRps) {
  const auto r = cli("cv " + kData + "/rps.csv --model general --k 3 --dims 2 --lambdas 0 "
                     "--format json --seed 42");
  ASSERT_EQ(r.exit_code, 0);
  const auto j = nlohmann::json::parse(r.output);
  EXPECT_DOUBLE_EQ(j["mean"].get<double>(), 1.0);
  EXPECT_EQ(j["folds"].size(), 3u);
}

TEST_F(CliTest, BenchTable) {
  const auto r = cli("bench " + kData + "/rps.csv --models naive,bt,general --dims 2 "
                     "--lambdas 0 --seed 1");
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_NE(r.output.find("Proposed Model"), std::string::npos);
  EXPECT_NE(r.output.find("rps"), std::string::npos);
}

TEST_F(CliTest, SynthGroundTruthMatchesStats) {
  for (const std::string cycles : {"3", "3,3", "4,3,3"}) {
    const auto s = cli("synth --cycles " + cycles + " --per-pair 20 --noise 0 --out " +
                       path("s.csv"));
    ASSERT_EQ(s.exit_code, 0);
    const double planted = number_after(s.output, "planted triangles");
    const auto st = cli("stats " + path("s.csv") + " --format json");
    ASSERT_EQ(st.exit_code, 0);
    EXPECT_EQ(nlohmann::json::parse(st.output)["triangles"].get<double>(), planted);
  }
  const auto one = cli("synth --cycles 3 --per-pair 100 --noise 0 --out " + path("r.csv"));
  EXPECT_DOUBLE_EQ(number_after(one.output, "planted triangles"), 1.0);
  const auto two = cli("synth --cycles 3,3 --noise 0 --out " + path("r.csv"));
  EXPECT_DOUBLE_EQ(number_after(two.output, "planted triangles"), 2.0);
}

TEST_F(CliTest, HelpPrintsDefaults) {
  const auto r = cli("train --help");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.output.find("0.05"), std::string::npos);
}

}  // namespace
}  // namespace intransic
