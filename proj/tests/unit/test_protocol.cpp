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

#include "ebl/protocol.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <sstream>

namespace ebl {
namespace {

const ApertureGeometry kGeom = ApertureGeometry::from_sigma_ratio(1.0, 2.0);

TEST(MemoryLayout, Sizes) {
  const auto L = MemoryLayout::make(3, 5);
  EXPECT_EQ(L.Mbar, 3);
  EXPECT_EQ(L.total_qubits(), 18);
  EXPECT_EQ(L.bell_pairs(), 9);
  EXPECT_EQ(L.pair_index(1, 0), 0);
  EXPECT_EQ(L.pair_index(3, 2), 8);
}

TEST(Codeword, MostSignificantFirst) {
  EXPECT_EQ(codeword(5, 3), (std::vector<std::uint8_t>{1, 0, 1}));
  EXPECT_EQ(codeword(1, 3), (std::vector<std::uint8_t>{0, 0, 1}));
  EXPECT_EQ(codeword(4, 3), (std::vector<std::uint8_t>{1, 0, 0}));
  for (int j = 0; j < 64; ++j) EXPECT_EQ(codeword_value(codeword(j, 6)), j);
  EXPECT_THROW(codeword(8, 3), std::out_of_range);
}

TEST(PhotonicXRecord, ConditionalSign) {
  PhotonicXRecord h = PhotonicXRecord::from_index(2, 1, 0);
  EXPECT_EQ(h.f(1, 0), 1);  // (+,+)
  h.b[0] = 1;
  EXPECT_EQ(h.f(1, 0), -1);  // (+,-)
  h.a[0] = 1;
  EXPECT_EQ(h.f(1, 0), 1);  // (-,-)
  h.b[0] = 0;
  EXPECT_EQ(h.f(1, 0), -1);  // (-,+)
  EXPECT_EQ(PhotonicXRecord::from_index(1, 2, 0b0110).str(), "+-|-+");
}

TEST(PhotonicXRecord, BitsAreUniform) {
  Rng rng(3);
  const int n = 40000;
  std::vector<int> ones(8, 0);
  for (int i = 0; i < n; ++i) {
    const auto h = PhotonicXRecord::sample(2, 2, rng);
    for (int t = 0; t < 4; ++t) {
      ones[t] += h.a[t];
      ones[4 + t] += h.b[t];
    }
  }
  for (int c : ones) EXPECT_LT(std::abs(c - n / 2.0), 4 * std::sqrt(n / 4.0));
}

TEST(Encode, CodewordColumnAndSign) {
  const auto basis = ModalBasis::sinc_bessel(3, 1.0);
  const auto scene = TwoPointScene::make(0.2, 0.1, 7);
  const auto photon = build_branches(scene, kGeom, basis, 1, 5);
  auto h = PhotonicXRecord::from_index(3, 7, 0);
  h.b[(5 - 1) * 3 + 1] = 1;  // f = -1 at (m=5, q=1)
  const auto mem = encoded_memory(photon, h);
  EXPECT_EQ(mem.m, 5);
  for (std::size_t i = 0; i < photon.size(); ++i) {
    const auto& b = mem.branches[i];
    const double f = (b.site == Site::A && b.q == 1) ? -1.0 : 1.0;
    EXPECT_EQ(b.amplitude, f * photon[i].amplitude);
  }
  const auto L = MemoryLayout::make(3, 7);
  EXPECT_EQ(parity_pattern(L, 5, 1),
            (std::vector<std::uint8_t>{0, 0, 0, 1, 0, 1, 0, 0, 0}));
}

TEST(Encode, VacuumLeavesMemoryEmpty) {
  Rng rng(1);
  const auto r = encode({}, MemoryLayout::make(2, 3), rng);
  EXPECT_TRUE(r.memory.vacuum());
  EXPECT_EQ(r.h.a.size(), 6u);
}

TEST(Decode, VacuumIsAllEven) {
  Rng rng(1);
  const auto L = MemoryLayout::make(3, 3);
  const auto d = decode_parity(MemoryState{}, L, rng);
  EXPECT_FALSE(d.record.photon);
  for (auto p : d.record.parity) EXPECT_EQ(p, 0);
}

TEST(Decode, CentroidAlwaysModeZero) {
  const auto basis = ModalBasis::sinc_bessel(4, 1.0);
  const auto scene = TwoPointScene::make(0.0, 0.1, 3);
  const auto L = MemoryLayout::make(4, 3);
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    const auto enc = encode(build_branches(scene, kGeom, basis, 1, 3), L, rng);
    const auto d = decode_parity(enc.memory, L, rng);
    EXPECT_EQ(d.record.q, 0);
    EXPECT_EQ(d.record.m, 3);
    EXPECT_EQ(d.record.n_odd, 2);
  }
}

TEST(Decode, ModeHistogramFollowsEta) {
  const auto basis = ModalBasis::sinc_bessel(5, 1.0);
  const auto scene = TwoPointScene::make(0.3, 0.1, 1);
  const auto L = MemoryLayout::make(5, 1);
  const auto e = eta(kGeom, basis, 0.3);
  const auto photon = build_branches(scene, kGeom, basis, 1, 1);
  Rng rng(11);
  const int n = 100000;
  std::vector<int> hist(5, 0);
  for (int i = 0; i < n; ++i) {
    const auto enc = encode(photon, L, rng);
    ++hist[decode_parity(enc.memory, L, rng).record.q];
  }
  for (int q = 0; q < 5; ++q) {
    const double p = e[q] * e[q];
    EXPECT_LE(std::abs(hist[q] - n * p), 3 * std::sqrt(n * p * (1 - p)) + 1) << q;
  }
}

TEST(ResolvePattern, RejectsInconsistentPatterns) {
  const auto L = MemoryLayout::make(2, 3);
  std::vector<std::uint8_t> p{1, 0, 0, 1};  // odd pairs in columns 0 and 1
  EXPECT_THROW(resolve_pattern(L, p), std::logic_error);
  std::vector<std::uint8_t> bad_len{1, 0};
  EXPECT_THROW(resolve_pattern(L, bad_len), std::logic_error);
  const auto ok = resolve_pattern(L, parity_pattern(L, 2, 1));
  EXPECT_TRUE(ok.photon);
  EXPECT_EQ(ok.m, 2);
  EXPECT_EQ(ok.q, 1);
}

TEST(Ghz, ParityRuleSmallExample) {
  // (+,-), (-,+), (+,+): two odd pairs.
  const std::vector<std::uint8_t> ef{0, 1, 1, 0, 0, 0};
  EXPECT_EQ(zeta_from_ef(ef), 1);
  const std::vector<std::uint8_t> one_odd{0, 1, 0, 0};
  EXPECT_EQ(zeta_from_ef(one_odd), -1);
}

TEST(Ghz, StringEnumerationSplitsEvenly) {
  for (int n = 1; n <= 5; ++n) {
    const auto plus = ef_strings(n, 1);
    const auto minus = ef_strings(n, -1);
    EXPECT_EQ(plus.size(), std::size_t{1} << (2 * n - 1));
    EXPECT_EQ(minus.size(), plus.size());
    for (const auto& s : plus) EXPECT_EQ(zeta_from_ef(s), 1);
    for (const auto& s : minus) EXPECT_EQ(zeta_from_ef(s), -1);
  }
}

TEST(Ghz, SampledStringsAreUniformAndConsistent) {
  Rng rng(9);
  std::map<std::vector<std::uint8_t>, int> seen;
  const int n = 32000;
  for (int i = 0; i < n; ++i) {
    const auto s = sample_ef_string(2, -1, rng);
    ASSERT_EQ(zeta_from_ef(s), -1);
    ++seen[s];
  }
  EXPECT_EQ(seen.size(), 8u);
  for (const auto& [s, c] : seen) EXPECT_LT(std::abs(c - n / 8.0), 5 * std::sqrt(n / 8.0));
}

TEST(Ghz, LabelsAtZeroPhase) {
  Rng rng(2);
  CollapsedMemory same{1, 0, {std::sqrt(0.5), 0}, {std::sqrt(0.5), 0}};   // f = +1
  CollapsedMemory flipped{1, 0, {-std::sqrt(0.5), 0}, {std::sqrt(0.5), 0}};  // f = -1
  for (int i = 0; i < 100; ++i) {
    const auto g1 = ghz_measure(same, 2, +1, rng);
    EXPECT_EQ(g1.zeta, 1);
    EXPECT_EQ(g1.label, 1);
    const auto g2 = ghz_measure(flipped, 2, -1, rng);
    EXPECT_EQ(g2.zeta, -1);
    EXPECT_EQ(g2.label, 1);
  }
}

TEST(RunProtocol, QuarterPhaseNeverPlus) {
  const auto g = ApertureGeometry::from_sigma_ratio(1.0, 1.0);
  const auto model = ProtocolModel::make(TwoPointScene::make(0.5, 0.5, 2), g,
                                         ModalBasis::sinc_bessel(3, 1.0));
  Rng rng(4);
  int detections = 0;
  for (int i = 0; i < 5000; ++i) {
    const auto r = run_protocol(model, rng);
    if (r.kind != OutcomeKind::Detection) continue;
    ++detections;
    EXPECT_EQ(r.sign, -1);
  }
  EXPECT_GT(detections, 1000);
}

TEST(RunProtocol, ZeroBaselineNeverMinus) {
  const auto g = ApertureGeometry::from_sigma_ratio(1.0, 0.0);
  const auto model = ProtocolModel::make(TwoPointScene::make(0.2, 0.5, 2), g,
                                         ModalBasis::sinc_bessel(3, 1.0));
  Rng rng(4);
  for (int i = 0; i < 5000; ++i) {
    const auto r = run_protocol(model, rng);
    if (r.kind == OutcomeKind::Detection) EXPECT_EQ(r.sign, 1);
  }
}

TEST(RunProtocol, TraceIsSelfConsistent) {
  const auto model = ProtocolModel::make(TwoPointScene::make(0.2, 1.0 / 3, 3), kGeom,
                                         ModalBasis::sinc_bessel(4, 1.0));
  Rng rng(8);
  for (int i = 0; i < 3000; ++i) {
    const auto r = run_protocol(model, rng);
    if (r.kind != OutcomeKind::Detection) continue;
    EXPECT_EQ(r.f, r.h.f(r.m, r.q));
    EXPECT_EQ(zeta_from_ef(r.ef), r.zeta);
    EXPECT_EQ(phi_label(r.zeta, r.f), r.sign);
    const auto d = resolve_pattern(model.layout, r.parity);
    EXPECT_EQ(d.m, r.m);
    EXPECT_EQ(d.q, r.q);
    EXPECT_GE(r.m, 1);
    EXPECT_LE(r.m, 3);
  }
}

TEST(ExactDistribution, LabelMarginalMatchesCosineLaw) {
  const auto basis = ModalBasis::sinc_bessel(2, 1.0);
  const auto model = ProtocolModel::make(TwoPointScene::make(0.2, 0.5, 1), kGeom, basis);
  const auto joint = exact_distribution(model);
  double total = 0.0;
  for (const auto& [k, v] : joint) total += v;
  EXPECT_NEAR(total, 1.0, 1e-12);
  const auto lm = label_marginal(joint);
  const auto e = eta(kGeom, basis, 0.2);
  const double c2 = std::pow(std::cos(kGeom.beta * 0.2), 2);
  const double pdet = 0.5 * model.arrivals.capture[0];
  EXPECT_NEAR(lm.at("q0+"), pdet * e[0] * e[0] * c2, 1e-12);
  EXPECT_NEAR(lm.at("q1-"), pdet * e[1] * e[1] * (1 - c2), 1e-12);
}

TEST(ExactDistribution, PhotonicRecordCarriesNoSignal) {
  const auto model = ProtocolModel::make(TwoPointScene::make(0.2, 0.5, 1), kGeom,
                                         ModalBasis::sinc_bessel(1, 1.0));
  std::map<std::string, double> h_marginal;
  for (const auto& [k, v] : exact_distribution(model)) h_marginal[k.substr(0, k.find(' '))] += v;
  EXPECT_EQ(h_marginal.size(), 4u);
  for (const auto& [h, p] : h_marginal) EXPECT_NEAR(p, 0.25, 1e-14) << h;
}

TEST(ExactDistribution, SizeLimit) {
  const auto model = ProtocolModel::make(TwoPointScene::make(0.2, 0.01, 13), kGeom,
                                         ModalBasis::sinc_bessel(1, 1.0));
  EXPECT_THROW(exact_distribution(model), std::length_error);
}

TEST(TotalVariation, Basics) {
  Distribution p{{"a", 0.5}, {"b", 0.5}};
  Distribution q{{"a", 0.25}, {"c", 0.75}};
  EXPECT_DOUBLE_EQ(total_variation(p, p), 0.0);
  EXPECT_DOUBLE_EQ(total_variation(p, q), 0.75);
}

TEST(DetectionRecords, RoundTrip) {
  std::stringstream ss;
  ss << "trial,m,q,sign,seed\n# comment\n";
  write_detection(ss, {3, 2, 1, -1, 99});
  write_detection(ss, {7, 1, 0, 1, 99});
  const auto lines = read_detections(ss);
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_EQ(lines[0].trial, 3u);
  EXPECT_EQ(lines[0].sign, -1);
  EXPECT_EQ(lines[1].q, 0);
  EXPECT_EQ(lines[1].seed, 99u);
  std::stringstream bad("1,2,x,+1,4\n");
  EXPECT_THROW(read_detections(bad), std::invalid_argument);
}

}  // namespace
}  // namespace ebl
