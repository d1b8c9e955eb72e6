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

#include <benchmark/benchmark.h>

#include <cmath>

#include "ebl/compiler.hpp"
#include "ebl/execution.hpp"
#include "ebl/fisher.hpp"
#include "ebl/montecarlo.hpp"
#include "ebl/quadrature.hpp"

namespace {

using namespace ebl;

Execution mode(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::Serial : Execution::Parallel;
}

void label(benchmark::State& state) {
  state.SetLabel(state.range(0) == 0 ? "serial" : "openmp x" + std::to_string(max_threads()));
}

void BM_RealLineQuadrature(benchmark::State& state) {
  auto f = [](double x) {
    const double s = x == 0.0 ? 1.0 : std::sin(x) / x;
    return s * s;
  };
  quad::RealLineOptions opts;
  opts.exec = mode(state);
  for (auto _ : state) benchmark::DoNotOptimize(quad::integrate_real_line(f, opts).value);
  label(state);
}
BENCHMARK(BM_RealLineQuadrature)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Qfi2d(benchmark::State& state) {
  const auto g = ApertureGeometry::from_sigma_ratio(1.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(qfi_2d(g, 1.0, mode(state)).value);
  label(state);
}
BENCHMARK(BM_Qfi2d)->Arg(0)->Arg(1)->Unit(benchmark::kSecond)->Iterations(1);

void BM_FisherGrid(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        fig3_grid({5, 10, 40}, {0.0, 1.0, 2.0, 3.0}, {1e-3, 0.01, 0.1, 0.5}, 1.0, 1.0, mode(state)));
  }
  label(state);
}
BENCHMARK(BM_FisherGrid)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_RunBatch(benchmark::State& state) {
  const auto g = ApertureGeometry::from_sigma_ratio(1.0, 2.0);
  const auto model = ProtocolModel::make(TwoPointScene::make(0.2, 1.0 / 6.0, 3, 1.0), g,
                                         ModalBasis::sinc_bessel(4, 1.0));
  for (auto _ : state) benchmark::DoNotOptimize(run_batch(model, 100000, 1, mode(state)));
  state.SetItemsProcessed(state.iterations() * 100000);
  label(state);
}
BENCHMARK(BM_RunBatch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_ReplicateStudy(benchmark::State& state) {
  const auto g = ApertureGeometry::from_sigma_ratio(1.0, 1.0);
  const auto basis = ModalBasis::sinc_bessel(10, 1.0);
  const auto model = ProtocolModel::make(TwoPointScene::make(0.2, 1.0, 1, 1.0), g, basis);
  for (auto _ : state) {
    benchmark::DoNotOptimize(replicate_study(model, g, basis, 20, 10000, 1, mode(state)));
  }
  label(state);
}
BENCHMARK(BM_ReplicateStudy)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_MeshRoundTrips(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(random_round_trips({4, 8, 16}, 30, 1, mode(state)));
  }
  label(state);
}
BENCHMARK(BM_MeshRoundTrips)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
