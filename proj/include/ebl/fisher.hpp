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

#pragma once

#include <iosfwd>
#include <vector>

#include "ebl/execution.hpp"
#include "ebl/optics.hpp"

namespace ebl {

/// 4 pi^2 N (3 r^2 + 1) / (3 sigma^2).
double qfi_closed_form(double N, double sigma, double r);

/// 4 N int psi'^2 dx / int psi^2 dx for the PSF shifted by `shift`. The
/// normalization makes the overlapping-aperture case (r < 1) well defined.
/// Throws quad::QuadratureError if the integral does not converge.
quad::Result qfi_integral_result(const Psf& psf, double N = 1.0, double shift = 0.0,
                                 Execution exec = Execution::Parallel);
double qfi_integral(const Psf& psf, double N = 1.0, double shift = 0.0);

/// Per-mode CFI J_q = 4 N_K (beta^2 eta_q^2 + eta_q'^2) and both algebraic
/// forms of the total.
struct CfiBreakdown {
  std::vector<double> eta;
  std::vector<double> eta_deriv;
  std::vector<double> J;
  double capture = 0.0;      // sum_q Gamma_q^2
  double eta_form = 0.0;     // sum_q J_q
  double gamma_form = 0.0;   // 4N (beta^2 S + sum Gamma'^2 - (sum Gamma Gamma')^2 / S)
  double per_detection = 0;  // 4 (beta^2 + sum eta'^2)
};

CfiBreakdown cfi_breakdown(double theta, const ApertureGeometry& geom, const ModalBasis& basis,
                           double N = 1.0);
double cfi_mode(int q, double theta, const ApertureGeometry& geom, const ModalBasis& basis,
                double N = 1.0);
double cfi_total(double theta, const ApertureGeometry& geom, const ModalBasis& basis,
                 double N = 1.0);

/// d eta_q / d theta from the analytic Gamma derivatives.
std::vector<double> eta_derivative(const ApertureGeometry& geom, const ModalBasis& basis,
                                   double theta);

/// 2-D QFI for square apertures side by side on the x axis: the separable
/// PSF psi_2ap(x) psi(y) integrated over the plane,
/// 4 N int int (d_x psi)^2 / int int psi^2.
quad::Result qfi_2d(const ApertureGeometry& geom, double N = 1.0,
                    Execution exec = Execution::Parallel);

struct FisherPoint {
  int K = 0;
  double r = 0.0;
  double theta_over_sigma = 0.0;
  double J_total = 0.0;
  double qfi = 0.0;
  double ratio = 0.0;
  std::vector<double> J;
};

/// Every (K, r, theta) combination, ordered K-major then r then theta.
/// Reported per photon times N.
std::vector<FisherPoint> fig3_grid(const std::vector<int>& Ks, const std::vector<double>& rs,
                                   const std::vector<double>& thetas_over_sigma, double sigma = 1.0,
                                   double N = 1.0, Execution exec = Execution::Parallel);

/// Columns K,r,theta_over_sigma,J_total,QFI,ratio,J_0..J_{Kmax-1}; cells for
/// q >= K are left empty.
void write_fisher_csv(std::ostream& os, const std::vector<FisherPoint>& points);

/// Ratio J/QFI against theta/sigma, one polyline per (K, r).
void write_fisher_svg(std::ostream& os, const std::vector<FisherPoint>& points);

}  // namespace ebl
