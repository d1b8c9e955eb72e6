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

#include "ebl/photon_state.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace ebl {

TwoPointScene TwoPointScene::make(double theta, double epsilon, int M, double N) {
  if (!std::isfinite(theta)) throw std::invalid_argument("theta must be finite");
  if (M < 1) throw std::invalid_argument("M must be at least 1");
  if (!(epsilon >= 0.0)) throw std::invalid_argument("epsilon must be non-negative");
  if (epsilon * M > 1.0) throw std::domain_error("linearization invalid: epsilon * M > 1");
  if (!(N > 0.0)) throw std::invalid_argument("N must be positive");
  return {theta, epsilon, M, N};
}

int memory_bits_for(int M) {
  if (M < 1) throw std::invalid_argument("M must be at least 1");
  int bits = 0;
  while ((std::int64_t{1} << bits) < static_cast<std::int64_t>(M) + 1) ++bits;
  return bits;
}

int TwoPointScene::memory_bits() const { return memory_bits_for(M); }

std::vector<PhotonBranch> build_branches(const TwoPointScene& scene, const ApertureGeometry& geom,
                                         const ModalBasis& basis, int s, int m) {
  if (s != 1 && s != 2) throw std::invalid_argument("star index must be 1 or 2");
  if (m < 1 || m > scene.M) throw std::invalid_argument("time bin out of range");
  const double x = scene.position(s);
  const auto e = eta(geom, basis, x);
  const cplx phase_a = std::polar(1.0 / std::sqrt(2.0), -geom.beta * x);
  const cplx phase_b = std::polar(1.0 / std::sqrt(2.0), geom.beta * x);
  std::vector<PhotonBranch> out;
  out.reserve(2 * e.size());
  for (int q = 0; q < static_cast<int>(e.size()); ++q) {
    out.push_back({s, m, Site::A, q, e[q] * phase_a});
    out.push_back({s, m, Site::B, q, e[q] * phase_b});
  }
  return out;
}

double project_phi(const std::vector<PhotonBranch>& branches, int q, int sign) {
  cplx overlap = 0.0;
  for (const auto& b : branches) {
    if (b.q != q) continue;
    overlap += (b.site == Site::A ? 1.0 : static_cast<double>(sign)) * b.amplitude;
  }
  return std::norm(overlap) / 2.0;
}

WeightTable mcopy_expand(double epsilon, int M) {
  if (M < 1) throw std::invalid_argument("M must be at least 1");
  if (!(epsilon >= 0.0)) throw std::invalid_argument("epsilon must be non-negative");
  if (epsilon * M > 1.0) throw std::domain_error("linearization invalid");
  return {1.0 - epsilon * M, epsilon, M};
}

ArrivalModel make_arrival_model(const TwoPointScene& scene, const ApertureGeometry& geom,
                                const ModalBasis& basis) {
  ArrivalModel model;
  model.weights = mcopy_expand(scene.epsilon, scene.M);
  for (int s = 1; s <= 2; ++s) {
    model.capture[s - 1] = std::min(1.0, gamma_set(geom, basis, scene.position(s)).capture());
  }
  return model;
}

Arrival sample_arrival(const ArrivalModel& model, Rng& rng) {
  const auto& w = model.weights;
  if (uniform01(rng) < w.vacuum) return {};
  const int m = 1 + std::min(w.M - 1, static_cast<int>(uniform01(rng) * w.M));
  const int s = coin(rng) ? 1 : 2;
  const bool captured = uniform01(rng) < model.capture[s - 1];
  return {captured ? ArrivalKind::Photon : ArrivalKind::NotCaptured, s, m};
}

std::vector<std::pair<Arrival, double>> arrival_distribution(const ArrivalModel& model) {
  const auto& w = model.weights;
  std::vector<std::pair<Arrival, double>> out;
  if (w.vacuum > 0.0) out.push_back({Arrival{}, w.vacuum});
  if (w.per_bin <= 0.0) return out;
  for (int s = 1; s <= 2; ++s) {
    for (int m = 1; m <= w.M; ++m) {
      const double p = 0.5 * w.per_bin;
      const double c = model.capture[s - 1];
      if (c > 0.0) out.push_back({Arrival{ArrivalKind::Photon, s, m}, p * c});
      if (c < 1.0) out.push_back({Arrival{ArrivalKind::NotCaptured, s, m}, p * (1.0 - c)});
    }
  }
  return out;
}

}  // namespace ebl
