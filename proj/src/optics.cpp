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

#include "ebl/optics.hpp"

#include <algorithm>
#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>
#include <cmath>
#include <numbers>

#include "ebl/spherical_bessel.hpp"

namespace ebl {
namespace {

using std::numbers::pi;

double sinc(double u) {
  if (std::abs(u) < 1e-4) {
    const double u2 = u * u;
    return 1.0 - u2 / 6.0 + u2 * u2 / 120.0;
  }
  return std::sin(u) / u;
}

double sinc_deriv(double u) {
  if (std::abs(u) < 1e-3) {
    const double u2 = u * u;
    return u * (-1.0 / 3.0 + u2 / 30.0 - u2 * u2 / 840.0);
  }
  return (u * std::cos(u) - std::sin(u)) / (u * u);
}

void check_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw std::invalid_argument(std::string(name) + " must be positive and finite");
  }
}

void check_same_sigma(const ApertureGeometry& geom, const ModalBasis& basis) {
  if (std::abs(geom.sigma - basis.sigma()) > 1e-12 * geom.sigma) {
    throw std::invalid_argument("basis sigma does not match aperture geometry");
  }
}

double panel_width_for(const Psf& psf) {
  return psf.kind() == PsfKind::TwoAperture ? 0.5 / (1.0 + psf.geometry().ratio) : 0.5;
}

}  // namespace

ApertureGeometry ApertureGeometry::from_delta_beta(double delta, double beta) {
  check_positive(delta, "delta");
  if (!(beta >= 0.0) || !std::isfinite(beta)) {
    throw std::invalid_argument("beta must be non-negative and finite");
  }
  return {delta, beta, 2.0 * pi / delta, 2.0 * beta / delta};
}

ApertureGeometry ApertureGeometry::from_sigma_ratio(double sigma, double ratio) {
  check_positive(sigma, "sigma");
  if (!(ratio >= 0.0) || !std::isfinite(ratio)) {
    throw std::invalid_argument("ratio must be non-negative and finite");
  }
  const double delta = 2.0 * pi / sigma;
  return {delta, ratio * delta / 2.0, sigma, ratio};
}

struct ModalBasis::Table {
  double x0 = 0.0;
  double dx = 0.0;
  double x1 = 0.0;
  std::vector<boost::math::interpolators::cardinal_cubic_b_spline<double>> splines;
  double defect = 0.0;
};

ModalBasis ModalBasis::sinc_bessel(int K, double sigma) {
  if (K < 1) throw std::invalid_argument("K must be at least 1");
  check_positive(sigma, "sigma");
  ModalBasis b;
  b.K_ = K;
  b.kind_ = BasisKind::SincBessel;
  b.sigma_ = sigma;
  return b;
}

ModalBasis ModalBasis::custom(double sigma, double x0, double dx,
                              const std::vector<std::vector<double>>& samples,
                              double tolerance) {
  check_positive(sigma, "sigma");
  check_positive(dx, "dx");
  if (samples.empty()) throw std::invalid_argument("custom basis needs at least one mode");
  const std::size_t n = samples.front().size();
  if (n < 4) throw std::invalid_argument("custom basis needs at least four samples per mode");
  auto table = std::make_shared<Table>();
  table->x0 = x0;
  table->dx = dx;
  table->x1 = x0 + dx * static_cast<double>(n - 1);
  for (const auto& row : samples) {
    if (row.size() != n) throw std::invalid_argument("custom basis rows differ in length");
    table->splines.emplace_back(row.begin(), row.end(), x0, dx);
  }

  ModalBasis b;
  b.K_ = static_cast<int>(samples.size());
  b.kind_ = BasisKind::Custom;
  b.sigma_ = sigma;
  b.table_ = table;

  // Products of cubic pieces are exact under one Kronrod rule per cell.
  double defect = 0.0;
  for (int q = 0; q < b.K_; ++q) {
    for (int p = q; p < b.K_; ++p) {
      double sum = 0.0;
      for (std::size_t c = 0; c + 1 < n; ++c) {
        const double a = x0 + dx * static_cast<double>(c);
        sum += quad::integrate([&](double x) { return b.eval(q, x) * b.eval(p, x); }, a, a + dx)
                   .value;
      }
      defect = std::max(defect, std::abs(sum - (q == p ? 1.0 : 0.0)));
    }
  }
  table->defect = defect;
  if (defect > tolerance) {
    throw std::invalid_argument("custom basis is not orthonormal (defect " +
                                std::to_string(defect) + ")");
  }
  return b;
}

double ModalBasis::eval(int q, double x) const {
  if (q < 0 || q >= K_) throw std::out_of_range("mode index out of range");
  if (kind_ == BasisKind::SincBessel) {
    return std::sqrt((1.0 + 2.0 * q) / sigma_) * special::sph_bessel_j(q, pi * x / sigma_);
  }
  if (x < table_->x0 || x > table_->x1) return 0.0;
  return table_->splines[q](x);
}

double ModalBasis::deriv(int q, double x) const {
  if (q < 0 || q >= K_) throw std::out_of_range("mode index out of range");
  if (kind_ == BasisKind::SincBessel) {
    const double k = pi / sigma_;
    return std::sqrt((1.0 + 2.0 * q) / sigma_) * k * special::sph_bessel_j_derivative(q, k * x);
  }
  if (x < table_->x0 || x > table_->x1) return 0.0;
  return table_->splines[q].prime(x);
}

double ModalBasis::support_lo() const {
  return kind_ == BasisKind::Custom ? table_->x0 : -HUGE_VAL;
}

double ModalBasis::support_hi() const {
  return kind_ == BasisKind::Custom ? table_->x1 : HUGE_VAL;
}

double ModalBasis::orthonormality_defect() const {
  if (kind_ == BasisKind::Custom) return table_->defect;
  double defect = 0.0;
  for (int q = 0; q < K_; ++q) {
    for (int p = q; p < K_; ++p) {
      if ((q + p) % 2 == 1) continue;  // odd integrand
      quad::RealLineOptions opts;
      opts.scale = sigma_;
      opts.cutoff = std::max(200.0, 2.0 * (p + 1) * (p + 1));
      const auto r = quad::integrate_real_line(
          [&](double x) { return eval(q, x) * eval(p, x); }, opts);
      defect = std::max(defect, std::abs(r.value - (q == p ? 1.0 : 0.0)));
    }
  }
  return defect;
}

double psf_sinc(const ApertureGeometry& geom, double x) {
  return sinc(pi * x / geom.sigma) / std::sqrt(geom.sigma);
}

double psf_sinc_deriv(const ApertureGeometry& geom, double x) {
  const double k = pi / geom.sigma;
  return k * sinc_deriv(k * x) / std::sqrt(geom.sigma);
}

double psf_two_aperture(const ApertureGeometry& geom, double x) {
  return std::sqrt(2.0) * std::cos(geom.beta * x) * psf_sinc(geom, x);
}

double psf_two_aperture_deriv(const ApertureGeometry& geom, double x) {
  const double bx = geom.beta * x;
  return std::sqrt(2.0) * (std::cos(bx) * psf_sinc_deriv(geom, x) -
                           geom.beta * std::sin(bx) * psf_sinc(geom, x));
}

double Psf::eval(double x) const {
  return kind_ == PsfKind::Sinc ? psf_sinc(geom_, x) : psf_two_aperture(geom_, x);
}

double Psf::deriv(double x) const {
  return kind_ == PsfKind::Sinc ? psf_sinc_deriv(geom_, x) : psf_two_aperture_deriv(geom_, x);
}

quad::Result psf_norm(const Psf& psf) {
  quad::RealLineOptions opts;
  opts.scale = psf.geometry().sigma;
  opts.panel_width = panel_width_for(psf);
  return quad::integrate_real_line(
      [&](double x) {
        const double v = psf.eval(x);
        return v * v;
      },
      opts);
}

TwoApertureNorm two_aperture_norm(const ApertureGeometry& geom) {
  const auto r = psf_norm(Psf(PsfKind::TwoAperture, geom));
  return {r.value, r.value - 1.0, std::max(0.0, 1.0 - geom.ratio), r.error};
}

namespace {

double overlap(const ModalBasis& basis, const Psf& psf, int q, double xs, bool derivative) {
  if (q < 0 || q >= basis.K()) throw std::out_of_range("mode index out of range");
  auto f = [&](double x) {
    return basis.eval(q, x) * (derivative ? -psf.deriv(x - xs) : psf.eval(x - xs));
  };
  const double sigma = basis.sigma();
  quad::Result r;
  if (basis.kind() == BasisKind::SincBessel) {
    quad::RealLineOptions opts;
    opts.scale = sigma;
    opts.cutoff = std::max(200.0, 1.0 * (q + 1) * (q + 1));
    opts.panel_width = panel_width_for(psf);
    opts.target_rel = 1e-9;
    r = quad::integrate_real_line(f, opts);
    if (!r.converged && r.error > 1e-9) {
      throw quad::QuadratureError("mode overlap integral did not converge", r.error);
    }
  } else {
    const double lo = basis.support_lo();
    const double hi = basis.support_hi();
    const double step = std::min(0.25 * sigma, hi - lo);
    const auto cells = static_cast<long>(std::ceil((hi - lo) / step));
    const double h = (hi - lo) / static_cast<double>(cells);
    quad::Options opts;
    opts.abs_tol = 1e-15;
    opts.rel_tol = 1e-12;
    for (long c = 0; c < cells; ++c) {
      const auto piece = quad::integrate(f, lo + c * h, lo + (c + 1) * h, opts);
      r.value += piece.value;
      r.error += piece.error;
      r.evaluations += piece.evaluations;
      r.converged = r.converged && piece.converged;
    }
    if (!r.converged) {
      throw quad::QuadratureError("mode overlap integral did not converge", r.error);
    }
  }
  return r.value;
}

}  // namespace

double gamma(const ModalBasis& basis, const Psf& psf, int q, double xs) {
  return overlap(basis, psf, q, xs, false);
}

double gamma_deriv_quadrature(const ModalBasis& basis, const Psf& psf, int q, double xs) {
  return overlap(basis, psf, q, xs, true);
}

double gamma_closed_form(const ModalBasis& basis, int q, double xs) {
  return std::sqrt(basis.sigma()) * basis.eval(q, xs);
}

double GammaSet::capture() const {
  double s = 0.0;
  for (double g : value) s += g * g;
  return s;
}

GammaSet gamma_set(const ApertureGeometry& geom, const ModalBasis& basis, double xs) {
  check_same_sigma(geom, basis);
  const int K = basis.K();
  GammaSet out;
  out.value.resize(K);
  out.deriv.resize(K);
  if (basis.kind() == BasisKind::SincBessel) {
    const double k = pi / geom.sigma;
    std::vector<double> j(K + 1);
    special::sph_bessel_j_sequence(k * xs, j);
    for (int q = 0; q < K; ++q) {
      const double norm = std::sqrt(1.0 + 2.0 * q);
      const double dj = q == 0 ? -j[1] : (q * j[q - 1] - (q + 1) * j[q + 1]) / (2.0 * q + 1.0);
      out.value[q] = norm * j[q];
      out.deriv[q] = norm * k * dj;
    }
  } else {
    const Psf psf(PsfKind::Sinc, geom);
    for (int q = 0; q < K; ++q) {
      out.value[q] = gamma(basis, psf, q, xs);
      out.deriv[q] = gamma_deriv_quadrature(basis, psf, q, xs);
    }
  }
  return out;
}

std::vector<double> eta(const ApertureGeometry& geom, const ModalBasis& basis, double xs) {
  auto g = gamma_set(geom, basis, xs);
  const double s = g.capture();
  if (!(s > 0.0)) throw ModeSupportError("source outside captured mode support");
  const double inv = 1.0 / std::sqrt(s);
  for (double& v : g.value) v *= inv;
  return g.value;
}

double captured_flux(double N, const ApertureGeometry& geom, const ModalBasis& basis,
                     double xs) {
  check_positive(N, "N");
  return N * gamma_set(geom, basis, xs).capture();
}

}  // namespace ebl
