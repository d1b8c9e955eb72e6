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

#include "ebl/io.hpp"

#include <fstream>
#include <sstream>

namespace ebl {

Matrix unitary_from_json(const json& j) {
  const json& rows = j.is_object() && j.contains("matrix") ? j.at("matrix") : j;
  if (!rows.is_array() || rows.empty()) throw std::invalid_argument("unitary: expected an array of rows");
  const auto D = static_cast<Eigen::Index>(rows.size());
  Matrix U(D, D);
  for (Eigen::Index i = 0; i < D; ++i) {
    const json& row = rows[i];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != D) {
      throw std::invalid_argument("unitary: row " + std::to_string(i) + " does not have " +
                                  std::to_string(D) + " entries");
    }
    for (Eigen::Index k = 0; k < D; ++k) {
      const json& z = row[k];
      if (z.is_number()) {
        U(i, k) = z.get<double>();
      } else if (z.is_array() && z.size() == 2 && z[0].is_number() && z[1].is_number()) {
        U(i, k) = {z[0].get<double>(), z[1].get<double>()};
      } else {
        throw std::invalid_argument("unitary: entry (" + std::to_string(i) + "," +
                                    std::to_string(k) + ") is not a [re, im] pair");
      }
    }
  }
  return U;
}

json unitary_to_json(const Matrix& U) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < U.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < U.cols(); ++k) row.push_back({U(i, k).real(), U(i, k).imag()});
    rows.push_back(row);
  }
  return {{"matrix", rows}};
}

json mesh_to_json(const MziMesh& mesh) {
  json mzis = json::array();
  for (const auto& z : mesh.mzis) mzis.push_back({{"mode", z.mode}, {"theta", z.theta}, {"phi", z.phi}});
  return {{"dimension", mesh.dimension}, {"mzis", mzis}, {"output_phases", mesh.output_phases}};
}

MziMesh mesh_from_json(const json& j) {
  MziMesh m;
  m.dimension = j.at("dimension").get<int>();
  for (const auto& z : j.at("mzis")) {
    m.mzis.push_back({z.at("mode").get<int>(), z.at("theta").get<double>(), z.at("phi").get<double>()});
  }
  m.output_phases = j.at("output_phases").get<std::vector<double>>();
  if (static_cast<int>(m.output_phases.size()) != m.dimension) {
    throw std::invalid_argument("mesh: output_phases length differs from dimension");
  }
  return m;
}

json budget_to_json(const ResourceBudget& b) {
  return {{"n", b.n},
          {"K", b.K},
          {"M", b.M},
          {"Mbar", b.Mbar},
          {"dimension", b.dimension},
          {"memory_qubits", b.memory_qubits},
          {"decode_bell_pairs", b.decode_bell_pairs},
          {"mzis", b.mzis},
          {"beamsplitters", b.beamsplitters},
          {"teleport_bell_pairs", b.teleport_bell_pairs},
          {"phase_shifters", b.phase_shifters},
          {"ghz_states", b.ghz_states},
          {"ghz_size", b.ghz_size}};
}

json report_to_json(const VerificationReport& r) {
  json vac = json::array();
  for (int k = 0; k < 4; ++k) vac.push_back({r.gadget_vacuum_output[k].real(), r.gadget_vacuum_output[k].imag()});
  return {{"single_excitation_deviation", r.single_excitation_deviation},
          {"single_excitation_frobenius", r.single_excitation_frobenius},
          {"gadget_block_deviation", r.gadget_block_deviation},
          {"gadget_vacuum_output", vac},
          {"vacuum_sector_discrepancy", r.vacuum_sector_discrepancy},
          {"full_register_leakage", r.full_register_leakage},
          {"bell_pairs_consumed", r.bell_pairs_consumed},
          {"gadgets", r.gadgets}};
}

json counts_to_json(const CountTable& t) {
  return {{"K", t.K},           {"plus", t.plus},     {"minus", t.minus},
          {"no_photon", t.no_photon}, {"not_captured", t.not_captured},
          {"trials", t.trials}, {"seed", t.seed}};
}

CountTable counts_from_json(const json& j) {
  const json& c = j.contains("counts") ? j.at("counts") : j;
  CountTable t;
  try {
    t.K = c.at("K").get<int>();
    t.plus = c.at("plus").get<std::vector<std::uint64_t>>();
    t.minus = c.at("minus").get<std::vector<std::uint64_t>>();
    t.no_photon = c.value("no_photon", std::uint64_t{0});
    t.not_captured = c.value("not_captured", std::uint64_t{0});
    t.trials = c.at("trials").get<std::uint64_t>();
    t.seed = c.value("seed", std::uint64_t{0});
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("counts: ") + e.what());
  }
  if (t.K < 1 || static_cast<int>(t.plus.size()) != t.K || static_cast<int>(t.minus.size()) != t.K) {
    throw std::invalid_argument("counts: plus/minus lengths must equal K");
  }
  if (t.detections() + t.no_photon + t.not_captured != t.trials) {
    throw std::invalid_argument("counts: cells do not sum to trials");
  }
  return t;
}

json cells_to_json(const CellProbabilities& p) {
  return {{"plus", p.plus}, {"minus", p.minus}, {"no_photon", p.no_photon}, {"not_captured", p.not_captured}};
}

json estimation_to_json(const EstimationResult& e) {
  return {{"theta_hat", e.theta_hat},
          {"loglik", e.loglik},
          {"ci_half_width", e.ci_half_width},
          {"fisher_per_detection", e.fisher_per_detection},
          {"detections", e.detections},
          {"interval", {e.interval.lo, e.interval.hi}},
          {"at_boundary", e.at_boundary}};
}

json study_to_json(const ReplicateStudy& s) {
  return {{"theta_true", s.theta_true},
          {"detections", s.detections},
          {"replicates", s.theta_hat.size()},
          {"mean", s.mean},
          {"variance", s.variance},
          {"cramer_rao", s.cramer_rao},
          {"variance_ratio", s.variance_ratio},
          {"coverage", s.coverage},
          {"median_abs_error", s.median_abs_error}};
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error reading " + path.string());
  return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw IoError("error writing " + path.string());
}

json read_json(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
}

}  // namespace ebl
