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

#include "ebl/fisher.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

namespace ebl {
namespace {

using std::numbers::pi;

TEST(QfiClosedForm, Values) {
  EXPECT_DOUBLE_EQ(qfi_closed_form(1.0, 1.0, 0.0), 4 * pi * pi / 3);
  EXPECT_DOUBLE_EQ(qfi_closed_form(1.0, 1.0, 1.0), 16 * pi * pi / 3);
  EXPECT_NEAR(qfi_closed_form(1.0, 1.0, 2.0) / qfi_closed_form(1.0, 1.0, 1.0), 13.0 / 4.0, 1e-15);
  EXPECT_DOUBLE_EQ(qfi_closed_form(3.0, 2.0, 1.0), 3 * 16 * pi * pi / (3 * 4));
}

TEST(QfiIntegral, MatchesClosedForm) {
  for (double r : {1.0, 2.0, 3.0}) {
    const auto g = ApertureGeometry::from_sigma_ratio(1.0, r);
    const double q = qfi_integral(Psf(PsfKind::TwoAperture, g));
    EXPECT_NEAR(q / qfi_closed_form(1.0, 1.0, r), 1.0, 1e-8) << r;
  }
}

TEST(QfiIntegral, SingleApertureLimit) {
  const auto g = ApertureGeometry::from_sigma_ratio(1.0, 0.0);
  EXPECT_NEAR(qfi_integral(Psf(PsfKind::TwoAperture, g)) / (4 * pi * pi / 3), 1.0, 1e-8);
  EXPECT_NEAR(qfi_integral(Psf(PsfKind::Sinc, g)) / (4 * pi * pi / 3), 1.0, 1e-8);
}

TEST(QfiIntegral, TranslationInvariant) {
  const Psf psf(PsfKind::TwoAperture, ApertureGeometry::from_sigma_ratio(1.0, 1.5));
  const double a = qfi_integral(psf, 1.0, 0.0);
  const double b = qfi_integral(psf, 1.0, 0.37);
  EXPECT_NEAR(a, b, 1e-9 * a);
}

TEST(CfiMode, CentroidValues) {
  const auto g = ApertureGeometry::from_sigma_ratio(1.0, 2.0);
  const auto basis = ModalBasis::sinc_bessel(4, 1.0);
  EXPECT_NEAR(cfi_mode(0, 0.0, g, basis), 4 * g.beta * g.beta, 1e-12);
  EXPECT_NEAR(cfi_mode(1, 0.0, g, basis), 4 * pi * pi / 3, 1e-12);
  for (int q = 2; q < 4; ++q) EXPECT_NEAR(cfi_mode(q, 0.0, g, basis), 0.0, 1e-12);
}

TEST(CfiTotal, FormsAgreeAndBounded) {
  for (double r : {0.5, 1.0, 2.0, 3.0}) {
    const auto g = ApertureGeometry::from_sigma_ratio(1.0, r);
    for (int K : {1, 3, 10}) {
      const auto basis = ModalBasis::sinc_bessel(K, 1.0);
      for (double theta : {0.0, 1e-3, 0.1, 0.3, 0.5}) {
        const auto b = cfi_breakdown(theta, g, basis);
        EXPECT_NEAR(b.eta_form, b.gamma_form, 1e-10 * std::max(1.0, b.gamma_form));
        for (double j : b.J) EXPECT_GE(j, 0.0);
        if (r >= 1.0) EXPECT_LE(b.eta_form, qfi_closed_form(1.0, 1.0, r) * (1 + 1e-9));
      }
    }
  }
}

TEST(CfiTotal, SmallSeparationReachesQfi) {
  for (double r : {1.0, 2.0, 3.0}) {
    const auto g = ApertureGeometry::from_sigma_ratio(1.0, r);
    const double j = cfi_total(1e-6, g, ModalBasis::sinc_bessel(2, 1.0));
    EXPECT_NEAR(j / qfi_closed_form(1.0, 1.0, r), 1.0, 1e-4);
  }
}

TEST(CfiTotal, LargeKNearlyOptimal) {
  const auto g = ApertureGeometry::from_sigma_ratio(1.0, 1.0);
  EXPECT_GE(cfi_total(0.2, g, ModalBasis::sinc_bessel(40, 1.0)) / qfi_closed_form(1, 1, 1), 0.99);
}

TEST(CfiTotal, MonotoneInK) {
  for (double r : {1.0, 2.0, 3.0}) {
    const auto g = ApertureGeometry::from_sigma_ratio(1.0, r);
    for (double theta : {0.05, 0.1, 0.3}) {
      double prev = 0.0;
      for (int K = 1; K <= 20; ++K) {
        const double j = cfi_total(theta, g, ModalBasis::sinc_bessel(K, 1.0));
        EXPECT_GE(j, prev * (1 - 1e-12)) << r << " " << theta << " " << K;
        prev = j;
      }
    }
  }
}

TEST(CfiTotal, ScalesWithN) {
  const auto g = ApertureGeometry::from_sigma_ratio(1.0, 1.0);
  const auto basis = ModalBasis::sinc_bessel(5, 1.0);
  const auto b = cfi_breakdown(0.2, g, basis, 1.0);
  const double nk = captured_flux(7.0, g, basis, 0.2);
  EXPECT_NEAR(cfi_total(0.2, g, basis, 7.0), nk * b.per_detection, 1e-10 * nk * b.per_detection);
}

TEST(EtaDerivative, MatchesFiniteDifference) {
  const auto g = ApertureGeometry::from_sigma_ratio(1.0, 1.0);
  const auto basis = ModalBasis::sinc_bessel(8, 1.0);
  const double h = 1e-5;
  for (double theta : {0.07, 0.2, 0.45}) {
    const auto d = eta_derivative(g, basis, theta);
    const auto up = eta(g, basis, theta + h);
    const auto dn = eta(g, basis, theta - h);
    for (int q = 0; q < 8; ++q) {
      const double fd = (up[q] - dn[q]) / (2 * h);
      EXPECT_NEAR(d[q], fd, 1e-6 * std::max(1.0, std::abs(fd)));
    }
  }
}

TEST(Qfi2d, MatchesOneDimensionalValue) {
  const auto g = ApertureGeometry::from_sigma_ratio(1.0, 1.0);
  const auto r = qfi_2d(g);
  EXPECT_NEAR(r.value / (16 * pi * pi / 3), 1.0, 1e-6);
}

TEST(Fig3Grid, OrderingAndRatios) {
  const auto pts = fig3_grid({2, 5}, {1.0, 2.0}, {0.001, 0.1, 0.4});
  ASSERT_EQ(pts.size(), 12u);
  EXPECT_EQ(pts[0].K, 2);
  EXPECT_EQ(pts[3].r, 2.0);
  EXPECT_EQ(pts[6].K, 5);
  for (const auto& p : pts) {
    EXPECT_LE(p.ratio, 1 + 1e-9);
    EXPECT_EQ(static_cast<int>(p.J.size()), p.K);
  }
  for (int i = 0; i < 6; ++i) EXPECT_GE(pts[6 + i].ratio, pts[i].ratio - 1e-12);
  EXPECT_GE(pts[0].ratio, 0.999);
}

TEST(Fig3Grid, SingleApertureRow) {
  const auto pts = fig3_grid({3}, {0.0}, {0.1});
  EXPECT_NEAR(pts[0].qfi, 4 * pi * pi / 3, 1e-12);
}

TEST(Fig3Grid, CsvLayout) {
  const auto pts = fig3_grid({1, 3}, {1.0}, {0.2});
  std::ostringstream os;
  write_fisher_csv(os, pts);
  std::istringstream in(os.str());
  std::string header, row1, row2;
  std::getline(in, header);
  std::getline(in, row1);
  std::getline(in, row2);
  EXPECT_EQ(header, "K,r,theta_over_sigma,J_total,QFI,ratio,J_0,J_1,J_2");
  EXPECT_EQ(std::count(row1.begin(), row1.end(), ','), 8);
  EXPECT_EQ(row1.substr(row1.size() - 2), ",,");
  std::ostringstream svg;
  write_fisher_svg(svg, pts);
  EXPECT_NE(svg.str().find("<svg"), std::string::npos);
}

}  // namespace
}  // namespace ebl
