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

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "ebl/execution.hpp"
#include "ebl/optics.hpp"
#include "ebl/protocol.hpp"

namespace ebl {

/// Aggregated outcomes of a batch of protocol runs.
struct CountTable {
  int K = 0;
  std::vector<std::uint64_t> plus;   // n_{q,+}
  std::vector<std::uint64_t> minus;  // n_{q,-}
  std::uint64_t no_photon = 0;
  std::uint64_t not_captured = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;

  static CountTable empty(int K, std::uint64_t seed = 0);
  std::uint64_t detections() const;
  void add(const OutcomeRecord& r);
  void merge(const CountTable& other);
  bool operator==(const CountTable&) const = default;
};

/// Model probabilities of every cell of a CountTable for one trial.
struct CellProbabilities {
  std::vector<double> plus;
  std::vector<double> minus;
  double no_photon = 0.0;
  double not_captured = 0.0;
};

CellProbabilities cell_probabilities(const ProtocolModel& model);

/// Detection-conditional probabilities: eta_q^2 cos^2(beta theta) and
/// eta_q^2 sin^2(beta theta), normalized to sum one.
CellProbabilities detected_probabilities(double theta, const ApertureGeometry& geom,
                                         const ModalBasis& basis);

/// Runs `trials` protocol rounds; trial t draws from stream
/// derive_seed(seed, t). When `detections` is given it receives one line
/// per detection in trial order.
CountTable run_batch(const ProtocolModel& model, std::uint64_t trials, std::uint64_t seed,
                     Execution exec = Execution::Parallel,
                     std::vector<DetectionLine>* detections = nullptr);
CountTable run_batch(const TwoPointScene& scene, const ApertureGeometry& geom,
                     const ModalBasis& basis, std::uint64_t trials, std::uint64_t seed,
                     Execution exec = Execution::Parallel);

/// Runs trials in order from the same streams until `detections`
/// detections have been recorded.
CountTable run_until_detections(const ProtocolModel& model, std::uint64_t detections,
                                std::uint64_t seed);

/// Rebuilds a table from detection lines; no-photon counts are unknown
/// and left at zero.
CountTable counts_from_detections(const std::vector<DetectionLine>& lines, int K);

/// Largest |n - N p| / sqrt(N p (1 - p)) over the (q, +-) cells; a cell
/// with p = 0 and n > 0 gives +inf.
double max_binomial_z(const CountTable& counts, const CellProbabilities& p);

struct ChiSquare {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 1.0;
};

/// Pearson chi-square over cells with positive probability. Cells expecting
/// fewer than 5 counts are pooled into one.
ChiSquare chi_square(const CountTable& counts, const CellProbabilities& p);

/// Sum over detected cells of n log P(theta); -inf if a cell with P = 0
/// has counts.
double loglik(double theta, const CountTable& counts, const ApertureGeometry& geom,
              const ModalBasis& basis);

class NonIdentifiable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SearchInterval {
  double lo = 0.0;  // exclusive
  double hi = 0.0;
};

/// (0, min(sigma / 2, pi / (2 beta))].
SearchInterval default_interval(const ApertureGeometry& geom);

struct EstimationResult {
  double theta_hat = 0.0;
  double loglik = 0.0;
  double ci_half_width = 0.0;
  double fisher_per_detection = 0.0;
  std::uint64_t detections = 0;
  SearchInterval interval;
  bool at_boundary = false;
};

/// Maximum-likelihood theta over the interval: a 256-point grid followed
/// by golden-section refinement around the best grid point. Throws
/// std::invalid_argument for fewer than 100 detections and NonIdentifiable
/// when the likelihood is flat.
EstimationResult estimate_theta(const CountTable& counts, const ApertureGeometry& geom,
                                const ModalBasis& basis, SearchInterval interval);
EstimationResult estimate_theta(const CountTable& counts, const ApertureGeometry& geom,
                                const ModalBasis& basis);

struct ReplicateStudy {
  double theta_true = 0.0;
  std::uint64_t detections = 0;
  std::vector<double> theta_hat;
  std::vector<char> covered;
  std::vector<char> boundary;
  double mean = 0.0;
  double variance = 0.0;
  double cramer_rao = 0.0;  // 1 / (detections * per-detection CFI)
  double variance_ratio = 0.0;
  double coverage = 0.0;
  double median_abs_error = 0.0;
};

/// Replicate r uses base seed derive_seed(seed, r) for its trials.
ReplicateStudy replicate_study(const ProtocolModel& model, const ApertureGeometry& geom,
                               const ModalBasis& basis, std::size_t replicates,
                               std::uint64_t detections, std::uint64_t seed,
                               Execution exec = Execution::Parallel);
ReplicateStudy replicate_study(const ProtocolModel& model, const ApertureGeometry& geom,
                               const ModalBasis& basis, std::size_t replicates,
                               std::uint64_t detections, std::uint64_t seed,
                               SearchInterval interval, Execution exec = Execution::Parallel);

/// replicate,theta_hat,covered,at_boundary rows followed by a summary
/// comment line.
void write_study_csv(std::ostream& os, const ReplicateStudy& study);

}  // namespace ebl
