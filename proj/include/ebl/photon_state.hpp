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

#include <array>
#include <complex>
#include <vector>

#include "ebl/optics.hpp"
#include "ebl/rng.hpp"

namespace ebl {

using cplx = std::complex<double>;

/// Two equally bright point sources at +theta and -theta, observed over M
/// time bins with single-photon probability epsilon per bin.
struct TwoPointScene {
  double theta = 0.0;
  double epsilon = 0.0;
  int M = 1;
  double N = 1.0;

  /// Validates 0 <= epsilon, epsilon * M <= 1, M >= 1, N > 0.
  static TwoPointScene make(double theta, double epsilon, int M, double N = 1.0);

  /// x_1 = +theta, x_2 = -theta.
  double position(int s) const { return s == 1 ? theta : -theta; }

  /// Number of memory qubits per spatial mode and site: ceil(log2(M + 1)).
  int memory_bits() const;
};

/// ceil(log2(M + 1)) for M >= 1.
int memory_bits_for(int M);

enum class Site { A, B };

struct PhotonBranch {
  int s = 1;
  int m = 1;
  Site site = Site::A;
  int q = 0;
  cplx amplitude;
};

/// The 2K branches of a photon from star s in bin m projected on the retained
/// modes: (A, q) carries eta_q e^{-i beta x_s}/sqrt 2, (B, q) carries
/// eta_q e^{+i beta x_s}/sqrt 2.
std::vector<PhotonBranch> build_branches(const TwoPointScene& scene, const ApertureGeometry& geom,
                                         const ModalBasis& basis, int s, int m);

/// |<phi^sign_q | branches>|^2 with phi^+- = (|A,q> +- |B,q>)/sqrt 2.
double project_phi(const std::vector<PhotonBranch>& branches, int q, int sign);

/// First-order expansion of the M-bin state: vacuum with 1 - M epsilon and a
/// photon in each bin with epsilon.
struct WeightTable {
  double vacuum = 1.0;
  double per_bin = 0.0;
  int M = 1;
  double total() const { return vacuum + per_bin * M; }
};

/// Throws std::domain_error("linearization invalid") if M epsilon > 1.
WeightTable mcopy_expand(double epsilon, int M);

/// Arrival statistics for one protocol run. capture[s-1] is the probability
/// that a photon from star s lands in the K retained modes.
struct ArrivalModel {
  WeightTable weights;
  std::array<double, 2> capture{1.0, 1.0};
};

ArrivalModel make_arrival_model(const TwoPointScene& scene, const ApertureGeometry& geom,
                                const ModalBasis& basis);

enum class ArrivalKind { Vacuum, Photon, NotCaptured };

struct Arrival {
  ArrivalKind kind = ArrivalKind::Vacuum;
  int s = 0;
  int m = 0;
};

Arrival sample_arrival(const ArrivalModel& model, Rng& rng);

/// Every arrival outcome with its probability (zero-probability outcomes are
/// omitted). Sums to one.
std::vector<std::pair<Arrival, double>> arrival_distribution(const ArrivalModel& model);

}  // namespace ebl
