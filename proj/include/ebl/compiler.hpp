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

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ebl/execution.hpp"
#include "ebl/rng.hpp"

namespace ebl {

using Matrix = Eigen::MatrixXcd;

/// MZI(theta, phi) = B P(theta) B P(phi) on modes (mode, mode + 1), with
/// B = [[1, 1], [1, -1]] / sqrt 2 and P(a) = diag(e^{ia}, 1). theta = 0 is
/// the bar state.
struct Mzi {
  int mode = 0;
  double theta = 0.0;
  double phi = 0.0;
};

Eigen::Matrix2cd mzi_matrix(double theta, double phi);

/// Rectangular mesh: U = diag(e^{i output_phases}) * M_last * ... * M_first.
struct MziMesh {
  int dimension = 0;
  std::vector<Mzi> mzis;  // in the order light meets them
  std::vector<double> output_phases;
};

bool is_unitary(const Matrix& U, double tol = 1e-10);

/// Clements decomposition by alternating column and row nulling. Throws
/// std::invalid_argument for non-square or non-unitary input.
MziMesh clements_decompose(const Matrix& U, double tol = 1e-10);
Matrix recompose(const MziMesh& mesh);

/// Haar-random unitary from the QR decomposition of a complex Ginibre matrix.
Matrix random_unitary(int D, Rng& rng);

/// Frobenius norm of A - B.
double frobenius_distance(const Matrix& A, const Matrix& B);

/// Two single-rail qubits (A, B); amplitudes in the order |00>, |01>, |10>,
/// |11> with A the left digit.
using PairState = Eigen::Vector4cd;

/// CNOT(A -> B), H(A), CNOT(A -> B) as a 4x4 matrix.
Eigen::Matrix4cd bs_gadget_matrix();
PairState bs_gadget(const PairState& state);

/// Pool of pre-shared Bell pairs.
class BellPairPool {
 public:
  explicit BellPairPool(std::size_t pairs) : available_(pairs) {}
  /// Throws std::runtime_error("no Bell pair available") when empty.
  void take();
  std::size_t remaining() const { return available_; }
  std::size_t consumed() const { return consumed_; }

 private:
  std::size_t available_;
  std::size_t consumed_ = 0;
};

/// Dense state vector on a handful of qubits (qubit 0 is the least
/// significant bit of the index).
class QubitRegister {
 public:
  explicit QubitRegister(int qubits);
  int qubits() const { return n_; }
  Eigen::VectorXcd& amplitudes() { return psi_; }
  const Eigen::VectorXcd& amplitudes() const { return psi_; }

  void x(int q);
  void z(int q);
  void h(int q);
  void phase(int q, double angle);  // diag(1, e^{i angle})
  void cnot(int control, int target);
  /// Projects qubit q on |outcome> without renormalizing; returns the
  /// probability of that outcome relative to the current norm.
  double project(int q, int outcome);
  /// Samples a Z-basis outcome, collapses and renormalizes.
  int measure(int q, Rng& rng);
  void normalize();

 private:
  int n_;
  Eigen::VectorXcd psi_;
};

/// Teleported CNOT between remote qubits `control` and `target` of `reg`,
/// consuming one Bell pair prepared on qubits (anc_c, anc_t), which must be
/// |0>: CNOT(control -> anc_c), Z-measure anc_c (m1) and X-correct anc_t,
/// CNOT(anc_t -> target), X-measure anc_t (m2) and Z-correct control.
struct TeleportRecord {
  int m1 = 0;
  int m2 = 0;
  double probability = 0.0;
};
TeleportRecord teleported_cnot(QubitRegister& reg, int control, int target, int anc_c, int anc_t,
                               BellPairPool& pool, Rng& rng);
/// Same with the measurement outcomes forced (branch not renormalized).
TeleportRecord teleported_cnot_branch(QubitRegister& reg, int control, int target, int anc_c,
                                      int anc_t, BellPairPool& pool, int m1, int m2);

/// Two-qubit convenience form: `state` over (control, target).
struct TeleportResult {
  PairState state;
  TeleportRecord record;
};
TeleportResult teleported_cnot(const PairState& state, BellPairPool& pool, Rng& rng);

/// Direct CNOT on a pair state (control = A).
PairState cnot_pair(const PairState& state);

struct TeleportVerification {
  double max_product_deviation = 0.0;  // over 16 inputs and all 4 branches
  double max_choi_deviation = 0.0;     // per branch, up to global phase
  double max_branch_probability_error = 0.0;
  std::size_t pairs_per_run = 0;
};
TeleportVerification verify_teleported_cnot();

struct ResourceBudget {
  int n = 0;
  int K = 0;
  int M = 0;
  int Mbar = 0;
  long dimension = 0;
  long memory_qubits = 0;
  long decode_bell_pairs = 0;
  long mzis = 0;
  long beamsplitters = 0;
  long teleport_bell_pairs = 0;
  long phase_shifters = 0;
  long ghz_states = 0;  // counted only, not simulated (n > 2)
  int ghz_size = 0;
};

ResourceBudget resource_budget(int n, int K, int M);

struct VerificationReport {
  double single_excitation_deviation = 0.0;  // max |T_ij - U_ij|
  double single_excitation_frobenius = 0.0;
  double gadget_block_deviation = 0.0;       // max over gadgets, vs B
  PairState gadget_vacuum_output;            // from the first gadget
  double vacuum_sector_discrepancy = 0.0;    // || G|00> - |00> ||
  double full_register_leakage = 0.0;        // weight outside one excitation
  std::size_t bell_pairs_consumed = 0;
  std::size_t gadgets = 0;
  std::string text() const;
};

struct CompileResult {
  MziMesh mesh;
  ResourceBudget budget;
  VerificationReport report;
};

/// Decomposes U (dimension n K) into a mesh, realizes every beamsplitter as
/// the gadget with teleported CNOTs and checks the single-photon action
/// against U. Throws std::invalid_argument on a dimension mismatch.
CompileResult compile_nonlocal(const Matrix& U, int n, int K, int M, std::uint64_t seed = 1);

/// Runs `count` random unitaries of dimensions cycling through dims and
/// returns the largest recomposition error (per-unitary parallel).
struct RoundTripSummary {
  double max_error = 0.0;
  bool counts_exact = true;
  std::size_t unitaries = 0;
};
RoundTripSummary random_round_trips(const std::vector<int>& dims, std::size_t count,
                                    std::uint64_t seed, Execution exec = Execution::Parallel);

}  // namespace ebl
