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

#include "ebl/quadrature.hpp"

#include <omp.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

namespace ebl {

void set_max_threads(int threads) {
  if (threads > 0) omp_set_num_threads(threads);
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace ebl

namespace ebl::quad {
namespace {

// Gauss-Kronrod 7/15 abscissae on [0, 1]; odd entries are the Gauss nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Rule15 {
  std::array<double, 15> x;
  std::array<double, 15> w;  // Kronrod weights scaled to the interval
  std::array<double, 15> fx;
  double kronrod = 0.0;
  double error = 0.0;
  double resabs = 0.0;
};

// QUADPACK qk15 with its error heuristic.
Rule15 apply15(const Integrand& f, double a, double b) {
  Rule15 r;
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double gauss = fc * kWg[3];
  double kronrod = fc * kWgk[7];
  double resabs = std::abs(kronrod);
  r.x[0] = center;
  r.w[0] = kWgk[7] * half;
  r.fx[0] = fc;
  std::array<double, 7> f1{};
  std::array<double, 7> f2{};
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double lo = f(center - dx);
    const double hi = f(center + dx);
    f1[j] = lo;
    f2[j] = hi;
    kronrod += kWgk[j] * (lo + hi);
    resabs += kWgk[j] * (std::abs(lo) + std::abs(hi));
    if (j % 2 == 1) gauss += kWg[j / 2] * (lo + hi);
    r.x[1 + 2 * j] = center - dx;
    r.x[2 + 2 * j] = center + dx;
    r.w[1 + 2 * j] = kWgk[j] * half;
    r.w[2 + 2 * j] = kWgk[j] * half;
    r.fx[1 + 2 * j] = lo;
    r.fx[2 + 2 * j] = hi;
  }
  const double mean = 0.5 * kronrod;
  double resasc = kWgk[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
  }
  const double habs = std::abs(half);
  resasc *= habs;
  resabs *= habs;
  double err = std::abs((kronrod - gauss) * half);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) {
    err = std::max(50.0 * kEps * resabs, err);
  }
  r.kronrod = kronrod * half;
  r.error = err;
  r.resabs = resabs;
  return r;
}

// Visits the accepted leaf rules of an adaptive bisection of [a, b].
template <typename Visit>
void adapt(const Integrand& f, double a, double b, const Options& opts, int depth,
           Visit& visit, std::size_t& evals, bool& converged) {
  const Rule15 r = apply15(f, a, b);
  evals += 15;
  const double tol = std::max(opts.abs_tol, opts.rel_tol * r.resabs);
  if (r.error <= tol || depth >= opts.max_depth || !std::isfinite(r.kronrod)) {
    if (r.error > tol || !std::isfinite(r.kronrod)) converged = false;
    visit(r);
    return;
  }
  const double mid = 0.5 * (a + b);
  adapt(f, a, mid, opts, depth + 1, visit, evals, converged);
  adapt(f, mid, b, opts, depth + 1, visit, evals, converged);
}

double richardson(std::vector<double> s, double* err) {
  const int n = static_cast<int>(s.size());
  std::vector<double> prev = s;
  double last_diag = s.back();
  double before_last = s.back();
  for (int j = 1; j < n; ++j) {
    std::vector<double> cur(n, 0.0);
    const double factor = std::ldexp(1.0, j) - 1.0;
    for (int k = j; k < n; ++k) cur[k] = prev[k] + (prev[k] - prev[k - 1]) / factor;
    before_last = prev[n - 1];
    last_diag = cur[n - 1];
    prev = std::move(cur);
  }
  *err = std::abs(last_diag - before_last);
  return last_diag;
}

}  // namespace

double window(double t) {
  if (t <= 1.0) return 1.0;
  if (t >= 2.0) return 0.0;
  const double u = t - 1.0;
  const double e = 1.0 / (1.0 - u) - 1.0 / u;
  if (e > 700.0) return 0.0;
  if (e < -700.0) return 1.0;
  return 1.0 / (1.0 + std::exp(e));
}

Result integrate(const Integrand& f, double a, double b, const Options& opts) {
  Result res;
  double sum = 0.0;
  double err = 0.0;
  auto visit = [&](const Rule15& r) {
    sum += r.kronrod;
    err += r.error;
  };
  adapt(f, a, b, opts, 0, visit, res.evaluations, res.converged);
  res.value = sum;
  res.error = err;
  return res;
}

Result integrate_real_line(const Integrand& f, const RealLineOptions& opts) {
  const int levels = std::clamp(opts.levels, 1, 8);
  const double L = opts.cutoff * opts.scale;
  const double outer = 2.0 * L * std::ldexp(1.0, levels - 1);
  const double width = opts.panel_width * opts.scale;
  const auto half_panels = static_cast<long>(std::ceil(outer / width));
  const long n_panels = 2 * half_panels;

  std::vector<double> sums(static_cast<std::size_t>(n_panels) * levels, 0.0);
  std::vector<double> errors(n_panels, 0.0);
  std::vector<std::size_t> evals(n_panels, 0);
  std::vector<char> ok(n_panels, 1);

  auto body = [&](long p) {
    const double a = opts.center + (p - half_panels) * width;
    const double b = a + width;
    double* slot = &sums[static_cast<std::size_t>(p) * levels];
    double err = 0.0;
    auto visit = [&](const Rule15& r) {
      err += r.error;
      for (int i = 0; i < 15; ++i) {
        const double t = std::abs(r.x[i] - opts.center) / L;
        const double wf = r.w[i] * r.fx[i];
        double scale = 1.0;
        for (int k = 0; k < levels; ++k, scale *= 2.0) {
          slot[k] += wf * window(t / scale);
        }
      }
    };
    bool conv = true;
    adapt(f, a, b, opts.panel, 0, visit, evals[p], conv);
    errors[p] = err;
    ok[p] = conv ? 1 : 0;
  };

  if (opts.exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 64)
    for (long p = 0; p < n_panels; ++p) body(p);
  } else {
    for (long p = 0; p < n_panels; ++p) body(p);
  }

  Result res;
  std::vector<double> level_sums(levels, 0.0);
  double panel_err = 0.0;
  for (long p = 0; p < n_panels; ++p) {
    for (int k = 0; k < levels; ++k) level_sums[k] += sums[static_cast<std::size_t>(p) * levels + k];
    panel_err += errors[p];
    res.evaluations += evals[p];
    if (!ok[p]) res.converged = false;
  }
  double extrap_err = 0.0;
  res.value = levels > 1 ? richardson(level_sums, &extrap_err) : level_sums[0];
  res.error = extrap_err + panel_err;
  if (!std::isfinite(res.value) ||
      res.error > opts.target_rel * std::abs(res.value) + 1e-14) {
    res.converged = false;
  }
  return res;
}

namespace {

struct AxisNodes {
  std::vector<double> x;
  std::vector<double> w;
  std::vector<double> win;  // levels entries per node
};

AxisNodes axis_nodes(double outer, double width, double L, int levels) {
  const auto half_panels = static_cast<long>(std::ceil(outer / width));
  const long n_panels = 2 * half_panels;
  const std::size_t n = static_cast<std::size_t>(n_panels) * 15;
  AxisNodes a{std::vector<double>(n), std::vector<double>(n), std::vector<double>(n * levels)};
  for (long p = 0; p < n_panels; ++p) {
    const double center = (static_cast<double>(p - half_panels) + 0.5) * width;
    const double half = 0.5 * width;
    const std::size_t base = static_cast<std::size_t>(p) * 15;
    a.x[base] = center;
    a.w[base] = kWgk[7] * half;
    for (int j = 0; j < 7; ++j) {
      a.x[base + 1 + 2 * j] = center - half * kXgk[j];
      a.x[base + 2 + 2 * j] = center + half * kXgk[j];
      a.w[base + 1 + 2 * j] = kWgk[j] * half;
      a.w[base + 2 + 2 * j] = kWgk[j] * half;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    double scale = 1.0;
    for (int k = 0; k < levels; ++k, scale *= 2.0) {
      a.win[i * levels + k] = window(std::abs(a.x[i]) / (L * scale));
    }
  }
  return a;
}

}  // namespace

Result integrate_plane(const Integrand2& f, const PlaneOptions& opts) {
  const int levels = std::clamp(opts.levels, 1, 8);
  const double L = opts.cutoff * opts.scale;
  const double outer = 2.0 * L * std::ldexp(1.0, levels - 1);
  const AxisNodes ax = axis_nodes(outer, opts.panel_width_x * opts.scale, L, levels);
  const AxisNodes ay = axis_nodes(outer, opts.panel_width_y * opts.scale, L, levels);
  const std::size_t nx = ax.x.size();
  const std::size_t ny = ay.x.size();

  std::vector<double> rows(ny * levels, 0.0);
  auto row = [&](std::size_t j) {
    double acc[8] = {0, 0, 0, 0, 0, 0, 0, 0};
    const double yj = ay.x[j];
    for (std::size_t i = 0; i < nx; ++i) {
      const double v = ax.w[i] * f(ax.x[i], yj);
      for (int k = 0; k < levels; ++k) acc[k] += v * ax.win[i * levels + k];
    }
    for (int k = 0; k < levels; ++k) {
      rows[j * levels + k] = acc[k] * ay.w[j] * ay.win[j * levels + k];
    }
  };

  if (opts.exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 16)
    for (long j = 0; j < static_cast<long>(ny); ++j) row(static_cast<std::size_t>(j));
  } else {
    for (std::size_t j = 0; j < ny; ++j) row(j);
  }

  std::vector<double> level_sums(levels, 0.0);
  for (std::size_t j = 0; j < ny; ++j) {
    for (int k = 0; k < levels; ++k) level_sums[k] += rows[j * levels + k];
  }
  Result res;
  res.evaluations = nx * ny;
  double err = 0.0;
  res.value = levels > 1 ? richardson(level_sums, &err) : level_sums[0];
  res.error = err;
  res.converged = std::isfinite(res.value);
  return res;
}

}  // namespace ebl::quad
