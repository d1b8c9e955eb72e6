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

#include <cstddef>

#include "ebl/protocol.hpp"

namespace ebl {

struct OracleLimits {
  std::size_t max_amplitudes = std::size_t{1} << 24;
};

/// Brute-force state-vector simulation of the full encode/decode circuit on
/// tiny instances: photonic register restricted to at most one excitation,
/// memories, and Bell-pair ancillas prepared by H + CNOT. Applies every CNOT
/// of the encoding and every CZ of the parity check gate by gate, then
/// enumerates all photonic X outcomes, ancilla X outcomes and E/F X outcomes.
/// Returns the joint distribution keyed like observed_key(). Throws
/// std::length_error when the state would exceed the limits.
Distribution oracle_statevector(const TwoPointScene& scene, const ApertureGeometry& geom,
                                const ModalBasis& basis, const OracleLimits& limits = {});

/// Result of projecting zeta^+- on 2N qubits onto every X-basis string.
struct GhzParityReport {
  int n_odd = 0;
  std::size_t strings = 0;
  /// Largest |P(string | zeta) - predicted| where the rule predicts
  /// 2^-(2N-1) for strings whose odd-pair count has the parity of zeta and
  /// 0 otherwise.
  double max_deviation = 0.0;
  bool exact = false;
};

GhzParityReport verify_ghz_parity_rule(int n_odd);

}  // namespace ebl
