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

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "ebl/compiler.hpp"
#include "ebl/fisher.hpp"
#include "ebl/format.hpp"
#include "ebl/montecarlo.hpp"
#include "ebl/oracle.hpp"
#include "ebl/protocol.hpp"

namespace {

using namespace ebl;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  const char* id;
  const char* name;
  double budget_seconds;  // 0 = no runtime limit
  std::function<Outcome()> run;
};

Outcome qfi_closed_form_check() {
  double worst = 0.0;
  for (double r : {1.0, 2.0, 3.0}) {
    const auto g = ApertureGeometry::from_sigma_ratio(1.0, r);
    const double integral = qfi_integral(Psf(PsfKind::TwoAperture, g));
    const double closed = qfi_closed_form(1.0, 1.0, r);
    worst = std::max(worst, std::abs(integral - closed) / closed);
  }
  return {worst <= 1e-8, "max relative error " + num(worst)};
}

Outcome cfi_convergence_check() {
  std::vector<double> thetas;
  for (int i = 0; i < 40; ++i) thetas.push_back(1e-3 * std::pow(500.0, i / 39.0));
  const auto grid = fig3_grid({40}, {1.0, 2.0, 3.0}, thetas);
  double lo = 2.0, hi = 0.0;
  for (const auto& p : grid) {
    lo = std::min(lo, p.ratio);
    hi = std::max(hi, p.ratio);
  }
  bool ok = lo > 0.95 && hi <= 1.0 + 1e-9;

  const std::vector<int> Ks = {2, 3, 5, 10, 40};
  const std::vector<double> rs = {0.0, 1.0, 2.0, 3.0};
  const auto small = fig3_grid(Ks, rs, {1e-3});
  double small_min = 2.0;
  bool monotone = true;
  for (std::size_t k = 0; k < Ks.size(); ++k) {
    for (std::size_t j = 0; j < rs.size(); ++j) {
      const auto& p = small[k * rs.size() + j];
      small_min = std::min(small_min, p.ratio);
      if (k > 0 && p.J_total < small[(k - 1) * rs.size() + j].J_total * (1.0 - 1e-12)) monotone = false;
      if (j > 0 && p.J_total <= small[k * rs.size() + j - 1].J_total) monotone = false;
    }
  }
  ok = ok && small_min >= 0.999 && monotone;
  return {ok, "K=40 ratio in [" + num(lo) + ", " + num(hi) + "], min ratio at 1e-3 " + num(small_min) +
                  (monotone ? ", monotone in K and r" : ", NOT monotone")};
}

Outcome oracle_check() {
  double worst = 0.0;
  int cases = 0;
  for (auto [K, M] : {std::pair{1, 1}, std::pair{2, 3}}) {
    for (double t : {0.0, 0.2, 0.5}) {
      for (double r : {1.0, 2.0}) {
        const auto g = ApertureGeometry::from_sigma_ratio(1.0, r);
        const auto basis = ModalBasis::sinc_bessel(K, 1.0);
        const auto scene = TwoPointScene::make(t, 0.5 / M, M, 1.0);
        const auto oracle = oracle_statevector(scene, g, basis);
        const auto branch = exact_distribution(ProtocolModel::make(scene, g, basis));
        worst = std::max(worst, total_variation(oracle, branch));
        ++cases;
      }
    }
  }
  return {worst <= 1e-10, std::to_string(cases) + " cases, max total variation " + num(worst)};
}

Outcome frequency_check() {
  const auto g = ApertureGeometry::from_sigma_ratio(1.0, 2.0);
  const auto model = ProtocolModel::make(TwoPointScene::make(0.2, 1.0 / 6.0, 3, 1.0), g,
                                         ModalBasis::sinc_bessel(4, 1.0));
  const auto counts = run_batch(model, 1000000, 20240601);
  const auto p = cell_probabilities(model);
  const double z = max_binomial_z(counts, p);
  const auto chi = chi_square(counts, p);
  return {z <= 4.0, "max |z| " + num(z) + " over 8 cells, chi-square p " + num(chi.p_value)};
}

Outcome efficiency_check() {
  const auto g = ApertureGeometry::from_sigma_ratio(1.0, 1.0);
  const auto basis = ModalBasis::sinc_bessel(10, 1.0);
  const auto model = ProtocolModel::make(TwoPointScene::make(0.2, 1.0, 1, 1.0), g, basis);
  const auto s = replicate_study(model, g, basis, 200, 10000, 7);
  const bool ok = s.variance_ratio >= 0.8 && s.variance_ratio <= 1.3;
  return {ok, "variance / CRLB " + num(s.variance_ratio) + ", coverage " + num(s.coverage)};
}

Outcome ghz_check() {
  bool ok = true;
  double worst = 0.0;
  std::size_t strings = 0;
  for (int n = 1; n <= 6; ++n) {
    const auto rep = verify_ghz_parity_rule(n);
    ok = ok && rep.exact;
    worst = std::max(worst, rep.max_deviation);
    strings += rep.strings;
  }
  return {ok, std::to_string(strings) + " strings over N=1..6, max deviation " + num(worst)};
}

Outcome round_trip_check() {
  const auto s = random_round_trips({1, 2, 3, 4, 5, 6, 7, 8}, 100, 99);
  const bool ok = s.max_error < 1e-10 && s.counts_exact && s.unitaries == 100;
  return {ok, std::to_string(s.unitaries) + " unitaries, max Frobenius error " + num(s.max_error) +
                  (s.counts_exact ? ", MZI counts exact" : ", MZI count mismatch")};
}

Outcome gadget_check() {
  const auto tele = verify_teleported_cnot();
  bool ok = tele.max_product_deviation <= 1e-10 && tele.max_choi_deviation <= 1e-10 &&
            tele.pairs_per_run == 1;
  Rng rng = make_stream(5, 0);
  const Matrix U = random_unitary(4, rng);
  const auto res = compile_nonlocal(U, 2, 2, 1, 5);
  ok = ok && res.report.single_excitation_deviation <= 1e-9;
  ok = ok && res.report.bell_pairs_consumed == static_cast<std::size_t>(res.budget.teleport_bell_pairs);
  PairState expected = PairState::Zero();
  expected(0) = expected(3) = 1.0 / std::sqrt(2.0);
  const double vac = (res.report.gadget_vacuum_output - expected).norm();
  const bool reported = res.report.text().find("NOT the identity on vacuum") != std::string::npos;
  ok = ok && vac <= 1e-10 && reported;
  return {ok, "CNOT deviation " + num(tele.max_choi_deviation) + ", D=4 action deviation " +
                  num(res.report.single_excitation_deviation) + ", vacuum output vs (|00>+|11>)/sqrt2 " +
                  num(vac) + (reported ? ", reported" : ", NOT reported")};
}

Outcome budget_check() {
  int cases = 0;
  bool ok = true;
  for (int n = 1; n <= 4; ++n) {
    for (int K = 1; K <= 6; ++K) {
      for (int M : {1, 3, 7, 15, 63}) {
        int mbar = 0;
        while ((1L << mbar) < M + 1) ++mbar;
        const long D = static_cast<long>(n) * K;
        const auto b = resource_budget(n, K, M);
        ok = ok && b.Mbar == mbar && b.memory_qubits == 2L * K * mbar &&
             b.decode_bell_pairs == static_cast<long>(K) * mbar && b.beamsplitters == D * (D - 1) &&
             b.teleport_bell_pairs == 2 * D * (D - 1) && b.mzis == D * (D - 1) / 2;
        ++cases;
      }
    }
  }
  return {ok, std::to_string(cases) + " (n, K, M) cases"};
}

Outcome qfi_2d_check() {
  double worst = 0.0;
  for (double r : {1.0, 3.0}) {
    const auto g = ApertureGeometry::from_sigma_ratio(1.0, r);
    const double closed = qfi_closed_form(1.0, 1.0, r);
    worst = std::max(worst, std::abs(qfi_2d(g).value - closed) / closed);
  }
  return {worst <= 1e-6, "max relative error " + num(worst)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"AC1", "QFI closed form", 1.0, qfi_closed_form_check},
      {"AC2", "CFI approaches QFI", 30.0, cfi_convergence_check},
      {"AC3", "branch simulator equals state-vector oracle", 120.0, oracle_check},
      {"AC4", "detection frequencies match cell model", 120.0, frequency_check},
      {"AC5", "estimator efficiency", 300.0, efficiency_check},
      {"AC6", "GHZ parity rule", 0.0, ghz_check},
      {"AC7", "mesh round trip", 0.0, round_trip_check},
      {"AC8", "nonlocal gadget", 0.0, gadget_check},
      {"AC9", "resource budget formulas", 0.0, budget_check},
      {"AC10", "2-D QFI", 30.0, qfi_2d_check},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream time;
    time.precision(3);
    time << secs << " s";
    if (c.budget_seconds > 0) time << " of " << c.budget_seconds << " s";
    const bool in_time = c.budget_seconds <= 0 || secs <= c.budget_seconds;
    if (!in_time) o.detail += ", over runtime budget";
    const bool pass = o.pass && in_time;
    if (!pass) ++failures;
    std::printf("%-4s %s  %s: %s [%s]\n", c.id, pass ? "PASS" : "FAIL", c.name, o.detail.c_str(),
                time.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
