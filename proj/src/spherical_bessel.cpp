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

#include "ebl/spherical_bessel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ebl::special {
namespace {

constexpr double kSeriesRadius = 0.5;

// j_n(z) = z^n/(2n+1)!! * sum_k (-z^2/2)^k / (k! (2n+3)(2n+5)...(2n+2k+1))
double series(int n, double z) {
  double lead = 1.0;
  for (int i = 1; i <= n; ++i) lead *= z / (2.0 * i + 1.0);
  const double h = -0.5 * z * z;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 30; ++k) {
    term *= h / (k * (2.0 * n + 2.0 * k + 1.0));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return lead * sum;
}

void upward(double z, std::span<double> out) {
  const double s = std::sin(z);
  const double c = std::cos(z);
  out[0] = s / z;
  if (out.size() == 1) return;
  out[1] = s / (z * z) - c / z;
  for (std::size_t n = 1; n + 1 < out.size(); ++n) {
    out[n + 1] = (2.0 * n + 1.0) / z * out[n] - out[n - 1];
  }
}

void miller(double z, std::span<double> out) {
  const int n_max = static_cast<int>(out.size()) - 1;
  const int start = n_max + 25 + static_cast<int>(z);
  double above = 0.0;
  double current = 1e-30;
  double norm = 0.0;
  std::fill(out.begin(), out.end(), 0.0);
  for (int n = start; n >= 0; --n) {
    if (n <= n_max) out[n] = current;
    norm += (2.0 * n + 1.0) * current * current;
    if (n == 0) break;
    const double below = (2.0 * n + 1.0) / z * current - above;
    above = current;
    current = below;
    if (std::abs(current) > 1e200) {
      constexpr double kShrink = 1e-200;
      current *= kShrink;
      above *= kShrink;
      norm *= kShrink * kShrink;
      for (int m = n; m <= n_max; ++m) out[m] *= kShrink;
    }
  }
  // Fix the overall sign with whichever low order is better conditioned.
  const double j0 = std::sin(z) / z;
  const double j1 = std::sin(z) / (z * z) - std::cos(z) / z;
  double scale = 1.0 / std::sqrt(norm);
  const bool use_j0 = std::abs(j0) >= std::abs(j1) || n_max == 0;
  const double reference = use_j0 ? j0 : j1;
  const double raw = use_j0 ? out[0] : out[1];
  if ((reference < 0.0) != (raw < 0.0)) scale = -scale;
  for (double& v : out) v *= scale;
}

}  // namespace

void sph_bessel_j_sequence(double z, std::span<double> out) {
  if (out.empty()) return;
  const double a = std::abs(z);
  if (a == 0.0) {
    std::fill(out.begin(), out.end(), 0.0);
    out[0] = 1.0;
    return;
  }
  const int n_max = static_cast<int>(out.size()) - 1;
  if (a < kSeriesRadius) {
    for (int n = 0; n <= n_max; ++n) out[n] = series(n, a);
  } else if (n_max <= 1 || a >= n_max) {
    upward(a, out);
  } else {
    miller(a, out);
  }
  if (z < 0.0) {
    for (int n = 1; n <= n_max; n += 2) out[n] = -out[n];
  }
}

double sph_bessel_j(int n, double z) {
  if (n < 0) throw std::domain_error("sph_bessel_j: negative order");
  std::vector<double> seq(static_cast<std::size_t>(n) + 1);
  sph_bessel_j_sequence(z, seq);
  return seq.back();
}

double sph_bessel_j_derivative(int n, double z) {
  if (n < 0) throw std::domain_error("sph_bessel_j_derivative: negative order");
  std::vector<double> seq(static_cast<std::size_t>(n) + 2);
  sph_bessel_j_sequence(z, seq);
  if (n == 0) return -seq[1];
  return (n * seq[n - 1] - (n + 1.0) * seq[n + 1]) / (2.0 * n + 1.0);
}

}  // namespace ebl::special
