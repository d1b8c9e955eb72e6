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
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ebl/optics.hpp"
#include "ebl/photon_state.hpp"

namespace ebl {

/// Every problem found while resolving a configuration, one per line.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

using KeyValues = std::map<std::string, std::string>;

/// Flat `key = value` text; blank lines and lines starting with '#' are
/// ignored. Throws ConfigError on lines without '='.
KeyValues parse_key_values(std::string_view text);

/// Keys accepted by resolve_config, in the order they are documented.
const std::vector<std::string>& config_keys();

struct RunConfig {
  std::string command;
  // Geometry: at most one of delta/sigma and one of r/beta; sigma = 1 and
  // r = 1 when absent.
  std::optional<double> delta, sigma, r, beta;
  int K = 10;
  int M = 1;
  std::optional<double> epsilon;  // default 0.5 / M
  double theta_over_sigma = 0.2;
  double N = 1.0;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  int threads = 0;
  std::string out;
  // fisher
  std::vector<int> Ks{5, 10, 40};
  std::vector<double> rs{0.0, 1.0, 2.0, 3.0};
  std::vector<double> thetas;
  std::string svg;
  // simulate
  std::string detections_out;
  // estimate
  std::string counts;
  std::size_t replicates = 0;
  std::uint64_t detections = 10000;
  std::optional<double> interval_lo, interval_hi;
  // compile
  std::string unitary;
  int random_dim = 0;
  int n = 2;
  double tolerance = 1e-9;  // 1e-10 for oracle
  std::string report;

  ApertureGeometry geometry() const;
  ModalBasis basis() const;
  TwoPointScene scene() const;
  double eps() const { return epsilon.value_or(0.5 / M); }
  /// Resolved settings as sorted `key=value` lines.
  std::string dump() const;
};

/// Builds and validates a configuration for `command`. All problems are
/// collected and thrown together as one ConfigError.
RunConfig resolve_config(const std::string& command, const KeyValues& kv);

}  // namespace ebl
