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

#include <gtest/gtest.h>

#include <cmath>

#include "ebl/compiler.hpp"
#include "ebl/execution.hpp"
#include "ebl/fisher.hpp"
#include "ebl/montecarlo.hpp"
#include "ebl/quadrature.hpp"

namespace ebl {
namespace {

class Parallel : public ::testing::Test {
 protected:
  void SetUp() override {
    saved_ = max_threads();
    set_max_threads(4);
  }
  void TearDown() override { set_max_threads(saved_); }
  int saved_ = 1;
};

TEST_F(Parallel, RealLineQuadrature) {
  auto f = [](double x) {
    const double s = x == 0.0 ? 1.0 : std::sin(x) / x;
    return s * s;
  };
  quad::RealLineOptions serial;
  serial.exec = Execution::Serial;
  quad::RealLineOptions parallel = serial;
  parallel.exec = Execution::Parallel;
  EXPECT_EQ(quad::integrate_real_line(f, serial).value, quad::integrate_real_line(f, parallel).value);
}

TEST_F(Parallel, FisherGrid) {
  const auto a = fig3_grid({2, 5}, {0.0, 2.0}, {0.01, 0.2}, 1.0, 1.0, Execution::Serial);
  const auto b = fig3_grid({2, 5}, {0.0, 2.0}, {0.01, 0.2}, 1.0, 1.0, Execution::Parallel);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].J_total, b[i].J_total);
    EXPECT_EQ(a[i].qfi, b[i].qfi);
    EXPECT_EQ(a[i].J, b[i].J);
  }
}

TEST_F(Parallel, Batch) {
  const auto g = ApertureGeometry::from_sigma_ratio(1.0, 2.0);
  const auto model = ProtocolModel::make(TwoPointScene::make(0.2, 1.0 / 6.0, 3, 1.0), g,
                                         ModalBasis::sinc_bessel(4, 1.0));
  std::vector<DetectionLine> da, db;
  const auto a = run_batch(model, 20000, 8, Execution::Serial, &da);
  const auto b = run_batch(model, 20000, 8, Execution::Parallel, &db);
  EXPECT_EQ(a, b);
  ASSERT_EQ(da.size(), db.size());
  for (std::size_t i = 0; i < da.size(); ++i) {
    EXPECT_EQ(da[i].trial, db[i].trial);
    EXPECT_EQ(da[i].q, db[i].q);
    EXPECT_EQ(da[i].sign, db[i].sign);
  }
}

TEST_F(Parallel, ReplicateStudy) {
  const auto g = ApertureGeometry::from_sigma_ratio(1.0, 1.0);
  const auto basis = ModalBasis::sinc_bessel(4, 1.0);
  const auto model = ProtocolModel::make(TwoPointScene::make(0.2, 1.0, 1, 1.0), g, basis);
  const auto a = replicate_study(model, g, basis, 6, 500, 3, Execution::Serial);
  const auto b = replicate_study(model, g, basis, 6, 500, 3, Execution::Parallel);
  EXPECT_EQ(a.theta_hat, b.theta_hat);
  EXPECT_EQ(a.variance, b.variance);
}

TEST_F(Parallel, RoundTrips) {
  const auto a = random_round_trips({2, 3, 5}, 9, 4, Execution::Serial);
  const auto b = random_round_trips({2, 3, 5}, 9, 4, Execution::Parallel);
  EXPECT_EQ(a.max_error, b.max_error);
  EXPECT_EQ(a.unitaries, b.unitaries);
}

TEST_F(Parallel, PlaneQuadrature) {
  const auto g = ApertureGeometry::from_sigma_ratio(1.0, 1.0);
  EXPECT_EQ(qfi_2d(g, 1.0, Execution::Serial).value, qfi_2d(g, 1.0, Execution::Parallel).value);
}

}  // namespace
}  // namespace ebl
