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
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "ebl/photon_state.hpp"

namespace ebl {

/// Memory registers: for each site, K spatial modes times Mbar qubits
/// holding the binary codeword of the arrival bin.
struct MemoryLayout {
  int K = 1;
  int M = 1;
  int Mbar = 1;

  static MemoryLayout make(int K, int M);
  int total_qubits() const { return 2 * K * Mbar; }
  int bell_pairs() const { return K * Mbar; }
  /// Bell pair (k, i), k = 1..Mbar, i = 0..K-1, in the parity vector.
  int pair_index(int k, int i) const { return i * Mbar + (k - 1); }
};

/// Binary digits w_1..w_Mbar of j; w_1 is the most significant.
std::vector<std::uint8_t> codeword(int j, int Mbar);
int codeword_value(std::span<const std::uint8_t> bits);

/// Photonic X-basis outcomes for all 2KM spatio-temporal modes.
/// Entries are 0 for '+' and 1 for '-', indexed (m - 1) * K + q.
struct PhotonicXRecord {
  int K = 0;
  int M = 0;
  std::vector<std::uint8_t> a;
  std::vector<std::uint8_t> b;

  /// Record number `index` in [0, 2^(2KM)): bit t of index is a[t] for
  /// t < KM and b[t - KM] above.
  static PhotonicXRecord from_index(int K, int M, std::uint64_t index);
  static PhotonicXRecord sample(int K, int M, Rng& rng);

  /// +1 when the outcomes at (m, q) agree, -1 otherwise.
  int f(int m, int q) const;
  std::string str() const;
};

/// Memory state after encoding: the photon-carrying time bin and one branch
/// per (site, q) holding the excitation pattern codeword(m) in column q.
/// No branches means every memory qubit is |0>.
struct MemoryBranch {
  Site site = Site::A;
  int q = 0;
  cplx amplitude;
};

struct MemoryState {
  int m = 0;
  std::vector<MemoryBranch> branches;
  bool vacuum() const { return branches.empty(); }
};

/// Memory state conditioned on the photonic record h: the B branch keeps
/// the photon amplitude and the A branch picks up f(h_mq). A q-dependent
/// global sign from the X measurement is dropped; the q branches are
/// orthogonal and are separated by the parity checks.
MemoryState encoded_memory(const std::vector<PhotonBranch>& photon, const PhotonicXRecord& h);

struct EncodeResult {
  PhotonicXRecord h;
  MemoryState memory;
};

/// Photonic X measurement (outcomes uniform over all 2^(2KM) strings) and
/// the resulting memory state. An empty branch list is the vacuum.
EncodeResult encode(const std::vector<PhotonBranch>& photon, const MemoryLayout& layout, Rng& rng);

/// Collapsed memory for a decoded (m, q): amplitudes of |1_A, 0_B> (a) and
/// |0_A, 1_B> (b) on the codeword qubits, normalized.
struct CollapsedMemory {
  int m = 0;
  int q = 0;
  cplx a;
  cplx b;
};

struct DecodeRecord {
  std::vector<std::uint8_t> parity;  // 1 = odd, see MemoryLayout::pair_index
  bool photon = false;
  int m = 0;
  int q = -1;
  int n_odd = 0;
};

/// Probability of each q after the parity checks.
std::vector<double> mode_distribution(const MemoryState& memory, int K);

/// Parity pattern for a photon in (m, q): codeword(m) in column q, even
/// elsewhere. m = 0 gives the all-even vacuum pattern.
std::vector<std::uint8_t> parity_pattern(const MemoryLayout& layout, int m, int q);

/// Reads (m, q) back from a parity pattern. Throws std::logic_error if the
/// odd pairs span more than one column or the codeword is out of range.
DecodeRecord resolve_pattern(const MemoryLayout& layout, std::span<const std::uint8_t> parity);

CollapsedMemory collapse(const MemoryState& memory, int q);

struct DecodeResult {
  DecodeRecord record;
  CollapsedMemory collapsed;
};
DecodeResult decode_parity(const MemoryState& memory, const MemoryLayout& layout, Rng& rng);

/// |c_+|^2 and |c_-|^2 for zeta^+- = (|0_E 1_F> +- |1_E 0_F>)/sqrt 2.
struct ZetaProbabilities {
  double plus = 0.0;
  double minus = 0.0;
};
ZetaProbabilities zeta_probabilities(const CollapsedMemory& c);

/// X-outcome string over the 2 N_m E/F qubits, pairs (E_mu, F_mu)
/// consecutive; 1 = '-'. +1 for an even number of odd pairs, else -1.
int zeta_from_ef(std::span<const std::uint8_t> ef);

/// All 2^(2N-1) strings consistent with zeta, in increasing binary order.
std::vector<std::vector<std::uint8_t>> ef_strings(int n_odd, int zeta);
std::vector<std::uint8_t> sample_ef_string(int n_odd, int zeta, Rng& rng);

/// phi sign reported for a zeta outcome: zeta when f = +1, flipped when -1.
inline int phi_label(int zeta, int f) { return zeta * f; }

struct GhzOutcome {
  int zeta = 0;
  std::vector<std::uint8_t> ef;
  int label = 0;
};
GhzOutcome ghz_measure(const CollapsedMemory& c, int n_odd, int f, Rng& rng);

enum class OutcomeKind { NoPhoton, NotCaptured, Detection };

struct OutcomeRecord {
  OutcomeKind kind = OutcomeKind::NoPhoton;
  int m = 0;
  int q = -1;
  int sign = 0;
  // Full trace of the run.
  Arrival arrival;
  PhotonicXRecord h;
  std::vector<std::uint8_t> parity;
  std::vector<std::uint8_t> ef;
  int f = 0;
  int zeta = 0;
};

/// Everything run_protocol needs that does not change between trials.
struct ProtocolModel {
  TwoPointScene scene;
  MemoryLayout layout;
  ArrivalModel arrivals;
  std::array<std::vector<PhotonBranch>, 2> photon;  // per star, m = 1

  static ProtocolModel make(const TwoPointScene& scene, const ApertureGeometry& geom,
                            const ModalBasis& basis);
  std::vector<PhotonBranch> branches(int s, int m) const;
};

OutcomeRecord run_protocol(const ProtocolModel& model, Rng& rng);
OutcomeRecord run_protocol(const TwoPointScene& scene, const ApertureGeometry& geom,
                           const ModalBasis& basis, Rng& rng);

/// Key of an outcome as seen by the experimenter: photonic record, parity
/// pattern, E/F string and label. NotCaptured is indistinguishable from
/// vacuum here.
std::string observed_key(const PhotonicXRecord& h, std::span<const std::uint8_t> parity,
                         std::span<const std::uint8_t> ef, bool detection, int q, int sign);
std::string observed_key(const OutcomeRecord& r);

using Distribution = std::unordered_map<std::string, double>;

/// Exact joint distribution of observed outcomes, enumerating the same
/// stage distributions that run_protocol samples from. Throws
/// std::length_error when 2KM > 24.
Distribution exact_distribution(const ProtocolModel& model);

double total_variation(const Distribution& p, const Distribution& q);

/// Marginal over labels: "none" or "q<q><sign>".
Distribution label_marginal(const Distribution& joint);

/// One detection per line: trial,m,q,sign,seed.
struct DetectionLine {
  std::uint64_t trial = 0;
  int m = 0;
  int q = 0;
  int sign = 0;
  std::uint64_t seed = 0;
};
void write_detection(std::ostream& os, const DetectionLine& d);
std::vector<DetectionLine> read_detections(std::istream& is);

}  // namespace ebl
