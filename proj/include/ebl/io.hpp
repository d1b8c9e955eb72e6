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

#include <filesystem>
#include <iosfwd>
#include <nlohmann/json.hpp>
#include <stdexcept>
#include <string>

#include "ebl/compiler.hpp"
#include "ebl/montecarlo.hpp"

namespace ebl {

using nlohmann::json;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Square complex matrix as rows of [re, im] pairs, either as the top-level
/// array or under the key "matrix". Throws std::invalid_argument on a
/// malformed document.
Matrix unitary_from_json(const json& j);
json unitary_to_json(const Matrix& U);

json mesh_to_json(const MziMesh& mesh);
MziMesh mesh_from_json(const json& j);
json budget_to_json(const ResourceBudget& b);
json report_to_json(const VerificationReport& r);

json counts_to_json(const CountTable& t);
CountTable counts_from_json(const json& j);
json cells_to_json(const CellProbabilities& p);
json estimation_to_json(const EstimationResult& e);
json study_to_json(const ReplicateStudy& s);

/// Whole-file helpers; failures throw IoError naming the path.
std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);
json read_json(const std::filesystem::path& path);

}  // namespace ebl
