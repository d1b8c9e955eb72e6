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

#include <gtest/gtest.h>

#include <filesystem>

namespace ebl {
namespace {

TEST(UnitaryJson, RoundTrip) {
  Rng rng(4);
  const Matrix U = random_unitary(3, rng);
  const Matrix back = unitary_from_json(json::parse(unitary_to_json(U).dump()));
  EXPECT_EQ(back, U);
}

TEST(UnitaryJson, AcceptsBareArrayAndRealEntries) {
  const auto U = unitary_from_json(json::parse("[[0, [1, 0]], [[1, 0], 0]]"));
  EXPECT_EQ(U(0, 1), std::complex<double>(1.0, 0.0));
  EXPECT_EQ(U(1, 1), std::complex<double>(0.0, 0.0));
}

TEST(UnitaryJson, RejectsMalformed) {
  EXPECT_THROW(unitary_from_json(json::parse("[]")), std::invalid_argument);
  EXPECT_THROW(unitary_from_json(json::parse("[[1, 0]]")), std::invalid_argument);
  EXPECT_THROW(unitary_from_json(json::parse("[[[1, 0, 3]]]")), std::invalid_argument);
  EXPECT_THROW(unitary_from_json(json::parse("{\"matrix\": 3}")), std::invalid_argument);
}

TEST(MeshJson, RoundTrip) {
  Rng rng(2);
  const auto mesh = clements_decompose(random_unitary(4, rng));
  const auto back = mesh_from_json(json::parse(mesh_to_json(mesh).dump()));
  EXPECT_EQ(back.dimension, 4);
  ASSERT_EQ(back.mzis.size(), mesh.mzis.size());
  for (std::size_t i = 0; i < mesh.mzis.size(); ++i) {
    EXPECT_EQ(back.mzis[i].theta, mesh.mzis[i].theta);
    EXPECT_EQ(back.mzis[i].phi, mesh.mzis[i].phi);
  }
  EXPECT_EQ(recompose(back), recompose(mesh));
}

TEST(CountsJson, RoundTripAndValidation) {
  auto t = CountTable::empty(2, 9);
  t.plus = {3, 1};
  t.minus = {2, 0};
  t.no_photon = 4;
  t.trials = 10;
  EXPECT_EQ(counts_from_json(counts_to_json(t)), t);
  auto j = counts_to_json(t);
  j["trials"] = 11;
  EXPECT_THROW(counts_from_json(j), std::invalid_argument);
  j = counts_to_json(t);
  j["plus"] = {1};
  EXPECT_THROW(counts_from_json(j), std::invalid_argument);
  EXPECT_THROW(counts_from_json(json::parse("{}")), std::invalid_argument);
}

TEST(Budget, JsonFields) {
  const auto j = budget_to_json(resource_budget(2, 2, 7));
  EXPECT_EQ(j.at("memory_qubits"), 12);
  EXPECT_EQ(j.at("teleport_bell_pairs"), 24);
}

TEST(Files, ErrorsNameThePath) {
  try {
    read_text("/nonexistent/dir/file.json");
    FAIL();
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent/dir/file.json"), std::string::npos);
  }
  EXPECT_THROW(write_text("/nonexistent/dir/out.txt", "x"), IoError);
  const auto path = std::filesystem::temp_directory_path() / "ebl_io_test.json";
  write_text(path, "{\"a\": 1}");
  EXPECT_EQ(read_json(path).at("a"), 1);
  write_text(path, "{not json");
  EXPECT_THROW(read_json(path), std::invalid_argument);
  std::filesystem::remove(path);
}

}  // namespace
}  // namespace ebl
