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

#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ebl/quadrature.hpp"

namespace ebl {

/// Two identical one-dimensional hard apertures of size delta centred at
/// +/-beta in the pupil plane. sigma = 2 pi / delta is the Rayleigh length
/// on the image plane and ratio = 2 beta / delta.
struct ApertureGeometry {
  double delta = 0.0;
  double beta = 0.0;
  double sigma = 0.0;
  double ratio = 0.0;

  static ApertureGeometry from_delta_beta(double delta, double beta);
  static ApertureGeometry from_sigma_ratio(double sigma, double ratio);

  /// True when the apertures overlap (ratio < 1). Allowed, but callers
  /// should warn.
  bool overlapping() const { return ratio < 1.0; }
};

/// Raised when a source carries no weight in the retained modes.
class ModeSupportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class BasisKind { SincBessel, Custom };

/// A set of K real orthonormal mode functions on the image plane.
class ModalBasis {
 public:
  /// phi_q(x) = sqrt((1+2q)/sigma) j_q(pi x / sigma).
  static ModalBasis sinc_bessel(int K, double sigma);

  /// Tabulated modes on the uniform grid x0 + i*dx (zero outside), one row
  /// per mode, interpolated by cubic B-splines. Throws std::invalid_argument
  /// if the interpolated modes are not orthonormal to within `tolerance`.
  static ModalBasis custom(double sigma, double x0, double dx,
                           const std::vector<std::vector<double>>& samples,
                           double tolerance = 1e-8);

  int K() const { return K_; }
  BasisKind kind() const { return kind_; }
  double sigma() const { return sigma_; }

  double eval(int q, double x) const;
  double deriv(int q, double x) const;

  /// Support of a custom basis; the whole line for SincBessel.
  double support_lo() const;
  double support_hi() const;

  /// Largest |<phi_q, phi_p> - delta_qp| found during validation (custom) or
  /// computed on demand by quadrature.
  double orthonormality_defect() const;

 private:
  struct Table;
  ModalBasis() = default;
  int K_ = 0;
  BasisKind kind_ = BasisKind::SincBessel;
  double sigma_ = 1.0;
  std::shared_ptr<const Table> table_;
};

enum class PsfKind { Sinc, TwoAperture };

/// Amplitude point-spread function of the hard-aperture system.
class Psf {
 public:
  Psf(PsfKind kind, const ApertureGeometry& geom) : kind_(kind), geom_(geom) {}
  double eval(double x) const;
  double deriv(double x) const;
  PsfKind kind() const { return kind_; }
  const ApertureGeometry& geometry() const { return geom_; }

 private:
  PsfKind kind_;
  ApertureGeometry geom_;
};

/// psi(x) = sqrt(sigma) sin(pi x / sigma) / (pi x).
double psf_sinc(const ApertureGeometry& geom, double x);
double psf_sinc_deriv(const ApertureGeometry& geom, double x);

/// sqrt(2) cos(beta x) psi(x).
double psf_two_aperture(const ApertureGeometry& geom, double x);
double psf_two_aperture_deriv(const ApertureGeometry& geom, double x);

/// Norm of the two-aperture PSF split into the unit direct term and the
/// interference cross term (zero once the apertures are separated).
struct TwoApertureNorm {
  double integral = 0.0;
  double cross_term = 0.0;
  double cross_term_exact = 0.0;  // max(0, 1 - r)
  double error = 0.0;
};
TwoApertureNorm two_aperture_norm(const ApertureGeometry& geom);

/// Integral of psi^2 over the real line.
quad::Result psf_norm(const Psf& psf);

/// Gamma_q(xs) = integral phi_q(x) psi(x - xs) dx by quadrature. Throws
/// quad::QuadratureError when the integral does not converge.
double gamma(const ModalBasis& basis, const Psf& psf, int q, double xs);

/// d Gamma_q / d xs = -integral phi_q(x) psi'(x - xs) dx by quadrature.
double gamma_deriv_quadrature(const ModalBasis& basis, const Psf& psf, int q, double xs);

/// sqrt(sigma) phi_q(xs), the value of Gamma_q for the sinc PSF and any
/// basis band-limited to the aperture (exact for SincBessel).
double gamma_closed_form(const ModalBasis& basis, int q, double xs);

/// Gamma_q and its xs-derivative for all q < K. SincBessel bases use the
/// closed form; custom bases integrate against the sinc PSF.
struct GammaSet {
  std::vector<double> value;
  std::vector<double> deriv;
  double capture() const;  // sum_q Gamma_q^2
};
GammaSet gamma_set(const ApertureGeometry& geom, const ModalBasis& basis, double xs);

/// eta_q = Gamma_q / sqrt(sum_l Gamma_l^2). Throws ModeSupportError if all
/// Gamma_q vanish.
std::vector<double> eta(const ApertureGeometry& geom, const ModalBasis& basis, double xs);

/// N_K = N sum_{l<K} Gamma_l^2(xs).
double captured_flux(double N, const ApertureGeometry& geom, const ModalBasis& basis,
                     double xs);

}  // namespace ebl
