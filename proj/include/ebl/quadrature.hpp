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

#include <cstddef>
#include <cstdio>
#include <functional>
#include <stdexcept>
#include <string>

#include "ebl/execution.hpp"

namespace ebl::quad {

using Integrand = std::function<double(double)>;
using Integrand2 = std::function<double(double, double)>;

struct Result {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
  std::size_t evaluations = 0;
  bool converged = true;
};

/// Thrown when an integral fails to reach its tolerance.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double residual)
      : std::runtime_error(what + " (residual " + format_residual(residual) + ")"),
        residual_(residual) {}
  double residual() const { return residual_; }

 private:
  static std::string format_residual(double r) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", r);
    return buf;
  }
  double residual_;
};

struct Options {
  double abs_tol = 1e-16;
  double rel_tol = 1e-13;
  int max_depth = 40;
};

/// Adaptive Gauss-Legendre (7-point) with Kronrod (15-point) error control on
/// [a, b]. A subinterval is accepted once its error estimate is below
/// max(abs_tol, rel_tol * integral of |f| over it).
Result integrate(const Integrand& f, double a, double b, const Options& opts = {});

/// Integration over the whole real line of integrands that decay only
/// algebraically with oscillating tails (products of sinc-like functions).
///
/// The integrand is multiplied by a C-infinity window equal to one on
/// |x| <= L and vanishing beyond 2L, which suppresses the oscillating part
/// of the tail faster than any power of 1/L. What is left depends on L as
/// a power series in 1/L, and Richardson extrapolation over
/// L, 2L, ..., 2^(levels-1) L removes the leading terms. Panels of width
/// `panel_width * scale` are integrated adaptively and summed in index order.
struct RealLineOptions {
  double scale = 1.0;
  double cutoff = 200.0;      // L in units of scale
  double panel_width = 0.5;   // in units of scale
  int levels = 5;
  double center = 0.0;
  double target_rel = 1e-10;
  Options panel{};
  Execution exec = Execution::Parallel;
};

Result integrate_real_line(const Integrand& f, const RealLineOptions& opts = {});

/// Same window-and-extrapolate scheme on the plane with a tensor-product
/// 15-point Kronrod rule on rectangular panels (no adaptivity). Each
/// extrapolation level uses the product window w(|x|/L) w(|y|/L).
struct PlaneOptions {
  double scale = 1.0;
  double cutoff = 20.0;
  double panel_width_x = 0.5;
  double panel_width_y = 0.5;
  int levels = 4;
  Execution exec = Execution::Parallel;
};

Result integrate_plane(const Integrand2& f, const PlaneOptions& opts = {});

/// Smooth step used for the cutoff window: 1 on t <= 1, 0 on t >= 2.
double window(double t);

}  // namespace ebl::quad
