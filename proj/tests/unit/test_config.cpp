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

#include "ebl/config.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

namespace ebl {
namespace {

TEST(KeyValues, ParsesCommentsAndWhitespace) {
  const auto kv = parse_key_values("# manifest\n\nK = 4\n  r=2 \nout = a b.csv\n");
  EXPECT_EQ(kv.size(), 3u);
  EXPECT_EQ(kv.at("K"), "4");
  EXPECT_EQ(kv.at("r"), "2");
  EXPECT_EQ(kv.at("out"), "a b.csv");
}

TEST(KeyValues, RejectsLinesWithoutEquals) {
  try {
    parse_key_values("K = 4\nbogus\n= 3\n");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.problems().size(), 2u);
  }
}

TEST(ResolveConfig, Defaults) {
  const auto c = resolve_config("simulate", {});
  EXPECT_DOUBLE_EQ(c.geometry().sigma, 1.0);
  EXPECT_DOUBLE_EQ(c.geometry().ratio, 1.0);
  EXPECT_DOUBLE_EQ(c.eps(), 0.5);
  EXPECT_EQ(c.K, 10);
}

TEST(ResolveConfig, GeometryFromDeltaBeta) {
  const auto c = resolve_config("simulate", {{"delta", "2"}, {"beta", "3"}});
  EXPECT_NEAR(c.geometry().sigma, std::numbers::pi, 1e-15);
  EXPECT_NEAR(c.geometry().ratio, 3.0, 1e-15);
  EXPECT_NEAR(c.geometry().beta, 3.0, 1e-15);
}

TEST(ResolveConfig, AggregatesAllProblems) {
  try {
    resolve_config("simulate", {{"delta", "1"}, {"sigma", "1"}, {"K", "0"}, {"epsilon", "2"},
                                {"trials", "abc"}, {"Ks", "1,2"}});
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.problems().size(), 5u);
    const std::string what = e.what();
    EXPECT_NE(what.find("delta and sigma"), std::string::npos);
    EXPECT_NE(what.find("unknown key 'Ks'"), std::string::npos);
    EXPECT_NE(what.find("trials"), std::string::npos);
  }
}

TEST(ResolveConfig, FisherLists) {
  const auto c = resolve_config("fisher", {{"Ks", "2, 8"}, {"rs", "1,3"}});
  EXPECT_EQ(c.Ks, (std::vector<int>{2, 8}));
  EXPECT_EQ(c.rs, (std::vector<double>{1.0, 3.0}));
  ASSERT_EQ(c.thetas.size(), 40u);
  EXPECT_NEAR(c.thetas.front(), 1e-3, 1e-15);
  EXPECT_NEAR(c.thetas.back(), 0.5, 1e-12);
  EXPECT_THROW(resolve_config("fisher", {{"Ks", "2,x"}}), ConfigError);
  EXPECT_THROW(resolve_config("fisher", {{"thetas", "0"}}), ConfigError);
}

TEST(ResolveConfig, CompileNeedsOneSource) {
  EXPECT_THROW(resolve_config("compile", {}), ConfigError);
  EXPECT_THROW(resolve_config("compile", {{"unitary", "u.json"}, {"random_dim", "4"}}), ConfigError);
  EXPECT_THROW(resolve_config("compile", {{"random_dim", "5"}, {"n", "2"}, {"K", "2"}}), ConfigError);
  EXPECT_NO_THROW(resolve_config("compile", {{"random_dim", "4"}, {"n", "2"}, {"K", "2"}}));
}

TEST(ResolveConfig, OracleLimitsAndTolerance) {
  EXPECT_THROW(resolve_config("oracle", {{"K", "3"}, {"M", "3"}}), ConfigError);
  const auto c = resolve_config("oracle", {{"K", "2"}, {"M", "3"}});
  EXPECT_DOUBLE_EQ(c.tolerance, 1e-10);
}

TEST(ResolveConfig, UnknownCommand) {
  EXPECT_THROW(resolve_config("launch", {}), ConfigError);
}

TEST(ResolveConfig, DumpIsSortedAndComplete) {
  const auto c = resolve_config("estimate", {{"K", "4"}, {"seed", "9"}});
  const std::string d = c.dump();
  EXPECT_NE(d.find("K=4\n"), std::string::npos);
  EXPECT_NE(d.find("seed=9\n"), std::string::npos);
  EXPECT_NE(d.find("interval_hi=default\n"), std::string::npos);
  EXPECT_LT(d.find("K="), d.find("seed="));
}

}  // namespace
}  // namespace ebl
