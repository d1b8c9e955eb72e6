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

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <ostream>
#include <utility>

#include "ebl/format.hpp"

namespace ebl {

using std::numbers::pi;

double qfi_closed_form(double N, double sigma, double r) {
  return 4.0 * pi * pi * N * (3.0 * r * r + 1.0) / (3.0 * sigma * sigma);
}

quad::Result qfi_integral_result(const Psf& psf, double N, double shift, Execution exec) {
  const auto& geom = psf.geometry();
  quad::RealLineOptions opts;
  opts.scale = geom.sigma;
  opts.center = shift;
  opts.exec = exec;
  opts.panel_width = 0.5 / (1.0 + geom.ratio);
  opts.cutoff = 50.0;
  const auto num = quad::integrate_real_line(
      [&](double x) {
        const double d = psf.deriv(x - shift);
        return d * d;
      },
      opts);
  const auto den = quad::integrate_real_line(
      [&](double x) {
        const double v = psf.eval(x - shift);
        return v * v;
      },
      opts);
  quad::Result r;
  r.value = 4.0 * N * num.value / den.value;
  r.error = std::abs(r.value) * (num.error / std::abs(num.value) + den.error / std::abs(den.value));
  r.evaluations = num.evaluations + den.evaluations;
  r.converged = num.converged && den.converged && std::isfinite(r.value);
  if (!r.converged) throw quad::QuadratureError("QFI integral did not converge", r.error);
  return r;
}

double qfi_integral(const Psf& psf, double N, double shift) {
  return qfi_integral_result(psf, N, shift).value;
}

CfiBreakdown cfi_breakdown(double theta, const ApertureGeometry& geom, const ModalBasis& basis,
                           double N) {
  const auto g = gamma_set(geom, basis, theta);
  const int K = basis.K();
  const double S = g.capture();
  if (!(S > 0.0)) throw ModeSupportError("source outside captured mode support");
  double cross = 0.0;
  double dsq = 0.0;
  for (int q = 0; q < K; ++q) {
    cross += g.value[q] * g.deriv[q];
    dsq += g.deriv[q] * g.deriv[q];
  }
  const double root = std::sqrt(S);
  const double b2 = geom.beta * geom.beta;
  CfiBreakdown out;
  out.capture = S;
  out.eta.resize(K);
  out.eta_deriv.resize(K);
  out.J.resize(K);
  double sum_d2 = 0.0;
  for (int q = 0; q < K; ++q) {
    out.eta[q] = g.value[q] / root;
    out.eta_deriv[q] = g.deriv[q] / root - g.value[q] * cross / (S * root);
    out.J[q] = 4.0 * N * S * (b2 * out.eta[q] * out.eta[q] + out.eta_deriv[q] * out.eta_deriv[q]);
    out.eta_form += out.J[q];
    sum_d2 += out.eta_deriv[q] * out.eta_deriv[q];
  }
  out.gamma_form = 4.0 * N * (b2 * S + dsq - cross * cross / S);
  out.per_detection = 4.0 * (b2 + sum_d2);
  return out;
}

double cfi_mode(int q, double theta, const ApertureGeometry& geom, const ModalBasis& basis,
                double N) {
  if (q < 0 || q >= basis.K()) throw std::out_of_range("mode index out of range");
  return cfi_breakdown(theta, geom, basis, N).J[q];
}

double cfi_total(double theta, const ApertureGeometry& geom, const ModalBasis& basis, double N) {
  return cfi_breakdown(theta, geom, basis, N).eta_form;
}

std::vector<double> eta_derivative(const ApertureGeometry& geom, const ModalBasis& basis,
                                   double theta) {
  return cfi_breakdown(theta, geom, basis).eta_deriv;
}

quad::Result qfi_2d(const ApertureGeometry& geom, double N, Execution exec) {
  quad::PlaneOptions opts;
  opts.scale = geom.sigma;
  opts.cutoff = 6.0;
  opts.levels = 4;
  opts.panel_width_x = 1.0 / (1.0 + geom.ratio);
  opts.panel_width_y = 1.0;
  opts.exec = exec;
  const auto num = quad::integrate_plane(
      [&](double x, double y) {
        const double dx = psf_two_aperture_deriv(geom, x);
        const double py = psf_sinc(geom, y);
        return dx * dx * py * py;
      },
      opts);
  const auto den = quad::integrate_plane(
      [&](double x, double y) {
        const double px = psf_two_aperture(geom, x);
        const double py = psf_sinc(geom, y);
        return px * px * py * py;
      },
      opts);
  quad::Result r;
  r.value = 4.0 * N * num.value / den.value;
  r.error = std::abs(r.value) * (num.error / std::abs(num.value) + den.error / std::abs(den.value));
  r.evaluations = num.evaluations + den.evaluations;
  r.converged = num.converged && den.converged;
  return r;
}

std::vector<FisherPoint> fig3_grid(const std::vector<int>& Ks, const std::vector<double>& rs,
                                   const std::vector<double>& thetas, double sigma, double N,
                                   Execution exec) {
  if (Ks.empty() || rs.empty() || thetas.empty()) {
    throw std::invalid_argument("Fisher grid axes must be nonempty");
  }
  std::vector<ModalBasis> bases;
  for (int K : Ks) bases.push_back(ModalBasis::sinc_bessel(K, sigma));
  std::vector<ApertureGeometry> geoms;
  std::vector<double> qfis;
  for (double r : rs) {
    geoms.push_back(ApertureGeometry::from_sigma_ratio(sigma, r));
    // The closed form assumes non-overlapping apertures (or a single one).
    qfis.push_back(r == 0.0 || r >= 1.0
                       ? qfi_closed_form(N, sigma, r)
                       : qfi_integral(Psf(PsfKind::TwoAperture, geoms.back()), N));
  }
  const std::size_t nr = rs.size();
  const std::size_t nt = thetas.size();
  const std::size_t total = Ks.size() * nr * nt;
  std::vector<FisherPoint> out(total);
  auto body = [&](std::size_t idx) {
    const std::size_t ik = idx / (nr * nt);
    const std::size_t ir = (idx / nt) % nr;
    const std::size_t it = idx % nt;
    const auto c = cfi_breakdown(thetas[it] * sigma, geoms[ir], bases[ik], N);
    FisherPoint& p = out[idx];
    p.K = Ks[ik];
    p.r = rs[ir];
    p.theta_over_sigma = thetas[it];
    p.J_total = c.eta_form;
    p.qfi = qfis[ir];
    p.ratio = p.J_total / p.qfi;
    p.J = c.J;
  };
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 4)
    for (long i = 0; i < static_cast<long>(total); ++i) body(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < total; ++i) body(i);
  }
  return out;
}

void write_fisher_csv(std::ostream& os, const std::vector<FisherPoint>& points) {
  int kmax = 0;
  for (const auto& p : points) kmax = std::max(kmax, p.K);
  os << "K,r,theta_over_sigma,J_total,QFI,ratio";
  for (int q = 0; q < kmax; ++q) os << ",J_" << q;
  os << '\n';
  for (const auto& p : points) {
    os << p.K << ',' << num(p.r) << ',' << num(p.theta_over_sigma) << ',' << num(p.J_total) << ','
       << num(p.qfi) << ',' << num(p.ratio);
    for (int q = 0; q < kmax; ++q) {
      os << ',';
      if (q < static_cast<int>(p.J.size())) os << num(p.J[q]);
    }
    os << '\n';
  }
}

void write_fisher_svg(std::ostream& os, const std::vector<FisherPoint>& points) {
  constexpr double W = 640, H = 420, ml = 60, mr = 160, mt = 20, mb = 50;
  double tmax = 0.0, ymin = 1.0;
  for (const auto& p : points) {
    tmax = std::max(tmax, p.theta_over_sigma);
    ymin = std::min(ymin, p.ratio);
  }
  if (tmax <= 0.0) tmax = 1.0;
  ymin = std::max(0.0, std::floor(ymin * 10.0) / 10.0);
  if (ymin >= 1.0) ymin = 0.9;
  auto sx = [&](double t) { return ml + (W - ml - mr) * t / tmax; };
  auto sy = [&](double v) { return mt + (H - mt - mb) * (1.0 - (v - ymin) / (1.0 - ymin)); };

  std::map<std::pair<int, double>, std::vector<const FisherPoint*>> curves;
  for (const auto& p : points) curves[{p.K, p.r}].push_back(&p);

  static const char* colors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                 "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
     << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr << "\" y2=\"" << H - mb
     << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << H - mb
     << "\" stroke=\"black\"/>\n";
  os << "<text x=\"" << (ml + W - mr) / 2 << "\" y=\"" << H - 10
     << "\" text-anchor=\"middle\">theta / sigma</text>\n";
  os << "<text x=\"15\" y=\"" << (mt + H - mb) / 2 << "\" transform=\"rotate(-90 15 "
     << (mt + H - mb) / 2 << ")\" text-anchor=\"middle\">CFI / QFI</text>\n";
  for (int i = 0; i <= 4; ++i) {
    const double t = tmax * i / 4.0;
    const double v = ymin + (1.0 - ymin) * i / 4.0;
    os << "<text x=\"" << sx(t) << "\" y=\"" << H - mb + 18 << "\" text-anchor=\"middle\" "
       << "font-size=\"11\">" << num(t) << "</text>\n";
    os << "<text x=\"" << ml - 6 << "\" y=\"" << sy(v) + 4 << "\" text-anchor=\"end\" "
       << "font-size=\"11\">" << num(v) << "</text>\n";
  }
  int c = 0;
  for (const auto& [key, pts] : curves) {
    const char* color = colors[c % 10];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (const auto* p : pts) os << sx(p->theta_over_sigma) << ',' << sy(p->ratio) << ' ';
    os << "\"/>\n";
    os << "<text x=\"" << W - mr + 10 << "\" y=\"" << mt + 16 * (c + 1) << "\" fill=\"" << color
       << "\" font-size=\"12\">K=" << key.first << " r=" << num(key.second) << "</text>\n";
    ++c;
  }
  os << "</svg>\n";
}

}  // namespace ebl
