// Copyright 2026 The entangled-baseline Authors
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

#include "ebl/commands.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "ebl/io.hpp"

namespace ebl {
namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("ebl_cmd_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::filesystem::path dir_;
};

TEST(Cli, HelpAndParseErrors) {
  EXPECT_EQ(cli({"--help"}).code, kExitOk);
  EXPECT_EQ(cli({}).code, kExitConfig);
  EXPECT_EQ(cli({"launch"}).code, kExitConfig);
  EXPECT_EQ(cli({"oracle", "--nonsense", "1"}).code, kExitConfig);
}

TEST(Cli, OracleTableAndLog) {
  const auto r = cli({"oracle", "--K", "1", "--M", "1", "--r", "2"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out.rfind("outcome\toracle\tbranch\tabs_diff\n", 0), 0u);
  EXPECT_NE(r.out.find("# total_variation="), std::string::npos);
  EXPECT_NE(r.err.find("# ebl oracle\n"), std::string::npos);
  EXPECT_NE(r.err.find("# r=2\n"), std::string::npos);
}

TEST(Cli, ConfigErrorsAreAggregated) {
  const auto r = cli({"simulate", "--K", "0", "--delta", "1", "--sigma", "1"});
  EXPECT_EQ(r.code, kExitConfig);
  EXPECT_NE(r.err.find("K must be"), std::string::npos);
  EXPECT_NE(r.err.find("delta and sigma"), std::string::npos);
}

TEST(Cli, MissingFilesExitWithIoCode) {
  EXPECT_EQ(cli({"simulate", "--config", "/nonexistent/run.cfg"}).code, kExitIo);
  EXPECT_EQ(cli({"compile", "--unitary", "/nonexistent/u.json", "--K", "1"}).code, kExitIo);
}

TEST_F(TempDir, FlagsOverrideConfigFile) {
  write_text(path("run.cfg"), "K = 3\ntrials = 500\nseed = 5\n");
  const auto r = cli({"simulate", "--config", path("run.cfg"), "--K", "2"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.err.find("# K=2\n"), std::string::npos);
  EXPECT_NE(r.err.find("# trials=500\n"), std::string::npos);
  const auto j = json::parse(r.out);
  EXPECT_EQ(j.at("counts").at("K"), 2);
  EXPECT_EQ(j.at("counts").at("trials"), 500);
}

TEST_F(TempDir, RerunsAreByteIdentical) {
  const std::vector<std::string> args = {"simulate", "--K", "3", "--trials", "2000", "--seed", "11",
                                         "--detections_out", path("det.csv")};
  const auto a = cli(args);
  const std::string det_a = read_text(path("det.csv"));
  const auto b = cli(args);
  ASSERT_EQ(a.code, kExitOk);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.err, b.err);
  EXPECT_EQ(det_a, read_text(path("det.csv")));
  EXPECT_EQ(det_a.rfind("trial,m,q,sign,seed\n", 0), 0u);
}

TEST_F(TempDir, EstimateFromDetectionFile) {
  ASSERT_EQ(cli({"simulate", "--K", "4", "--trials", "20000", "--detections_out", path("det.csv"),
                 "--out", path("sim.json")})
                .code,
            kExitOk);
  const auto r = cli({"estimate", "--K", "4", "--counts", path("det.csv")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = json::parse(r.out);
  const double theta_hat = j.at("estimate").at("theta_hat").get<double>();
  EXPECT_NEAR(theta_hat, 0.2, 0.05);
  const auto from_json = cli({"estimate", "--K", "4", "--counts", path("sim.json")});
  ASSERT_EQ(from_json.code, kExitOk) << from_json.err;
  EXPECT_DOUBLE_EQ(json::parse(from_json.out).at("estimate").at("theta_hat").get<double>(), theta_hat);
}

TEST_F(TempDir, EstimateRejectsEmptyAndMismatchedCounts) {
  write_text(path("empty.csv"), "trial,m,q,sign,seed\n");
  EXPECT_EQ(cli({"estimate", "--K", "4", "--counts", path("empty.csv")}).code, kExitConfig);
  auto t = CountTable::empty(3, 1);
  t.plus = {500, 0, 0};
  t.trials = 500;
  write_text(path("c.json"), counts_to_json(t).dump());
  EXPECT_EQ(cli({"estimate", "--K", "4", "--counts", path("c.json")}).code, kExitConfig);
}

TEST_F(TempDir, CompileIdentity) {
  write_text(path("u.json"), "[[1, 0], [0, 1]]");
  const auto r = cli({"compile", "--unitary", path("u.json"), "--n", "2", "--K", "1", "--report",
                      path("report.txt")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j.at("budget").at("mzis"), 1);
  EXPECT_LT(j.at("verification").at("single_excitation_deviation").get<double>(), 1e-12);
  EXPECT_NE(read_text(path("report.txt")).find("NOT the identity on vacuum"), std::string::npos);
}

TEST_F(TempDir, CompileRejectsNonUnitary) {
  write_text(path("u.json"), "[[1, 1], [0, 1]]");
  EXPECT_EQ(cli({"compile", "--unitary", path("u.json"), "--n", "2", "--K", "1"}).code, kExitConfig);
}

TEST(Cli, FisherCsv) {
  const auto r = cli({"fisher", "--Ks", "2", "--rs", "1", "--thetas", "0.1,0.2"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::istringstream in(r.out);
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 3);
}

}  // namespace
}  // namespace ebl
