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

#include "ebl/montecarlo.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include "ebl/fisher.hpp"
#include "ebl/format.hpp"

namespace ebl {

CountTable CountTable::empty(int K, std::uint64_t seed) {
  CountTable t;
  t.K = K;
  t.plus.assign(K, 0);
  t.minus.assign(K, 0);
  t.seed = seed;
  return t;
}

std::uint64_t CountTable::detections() const {
  std::uint64_t n = 0;
  for (int q = 0; q < K; ++q) n += plus[q] + minus[q];
  return n;
}

void CountTable::add(const OutcomeRecord& r) {
  ++trials;
  switch (r.kind) {
    case OutcomeKind::NoPhoton:
      ++no_photon;
      break;
    case OutcomeKind::NotCaptured:
      ++not_captured;
      break;
    case OutcomeKind::Detection:
      ++(r.sign > 0 ? plus : minus)[r.q];
      break;
  }
}

void CountTable::merge(const CountTable& o) {
  if (o.K != K) throw std::invalid_argument("count tables have different K");
  for (int q = 0; q < K; ++q) {
    plus[q] += o.plus[q];
    minus[q] += o.minus[q];
  }
  no_photon += o.no_photon;
  not_captured += o.not_captured;
  trials += o.trials;
}

CellProbabilities cell_probabilities(const ProtocolModel& model) {
  const int K = model.layout.K;
  CellProbabilities p;
  p.plus.assign(K, 0.0);
  p.minus.assign(K, 0.0);
  for (const auto& [arrival, w] : arrival_distribution(model.arrivals)) {
    switch (arrival.kind) {
      case ArrivalKind::Vacuum:
        p.no_photon += w;
        break;
      case ArrivalKind::NotCaptured:
        p.not_captured += w;
        break;
      case ArrivalKind::Photon: {
        const auto br = model.branches(arrival.s, arrival.m);
        for (int q = 0; q < K; ++q) {
          p.plus[q] += w * project_phi(br, q, +1);
          p.minus[q] += w * project_phi(br, q, -1);
        }
        break;
      }
    }
  }
  return p;
}

CellProbabilities detected_probabilities(double theta, const ApertureGeometry& geom,
                                         const ModalBasis& basis) {
  const auto e = eta(geom, basis, theta);
  const double c = std::cos(geom.beta * theta);
  const double s = std::sin(geom.beta * theta);
  CellProbabilities p;
  const std::size_t K = e.size();
  p.plus.resize(K);
  p.minus.resize(K);
  double total = 0.0;
  for (std::size_t q = 0; q < K; ++q) {
    p.plus[q] = e[q] * e[q] * c * c;
    p.minus[q] = e[q] * e[q] * s * s;
    total += p.plus[q] + p.minus[q];
  }
  for (std::size_t q = 0; q < K; ++q) {
    p.plus[q] /= total;
    p.minus[q] /= total;
  }
  return p;
}

CountTable run_batch(const ProtocolModel& model, std::uint64_t trials, std::uint64_t seed,
                     Execution exec, std::vector<DetectionLine>* detections) {
  const int K = model.layout.K;
  CountTable total = CountTable::empty(K, seed);
  std::vector<DetectionLine> slots;
  if (detections) slots.assign(trials, DetectionLine{});
  auto one = [&](std::uint64_t t, CountTable& local) {
    Rng rng = make_stream(seed, t);
    const OutcomeRecord r = run_protocol(model, rng);
    local.add(r);
    if (detections) slots[t] = {t, r.m, r.q, r.kind == OutcomeKind::Detection ? r.sign : 0, seed};
  };
  if (exec == Execution::Parallel) {
#pragma omp parallel
    {
      CountTable local = CountTable::empty(K, seed);
#pragma omp for schedule(static)
      for (long long t = 0; t < static_cast<long long>(trials); ++t) {
        one(static_cast<std::uint64_t>(t), local);
      }
#pragma omp critical
      total.merge(local);
    }
  } else {
    for (std::uint64_t t = 0; t < trials; ++t) one(t, total);
  }
  if (detections) {
    detections->clear();
    for (const auto& d : slots) {
      if (d.sign != 0) detections->push_back(d);
    }
  }
  return total;
}

CountTable run_batch(const TwoPointScene& scene, const ApertureGeometry& geom,
                     const ModalBasis& basis, std::uint64_t trials, std::uint64_t seed,
                     Execution exec) {
  return run_batch(ProtocolModel::make(scene, geom, basis), trials, seed, exec);
}

CountTable run_until_detections(const ProtocolModel& model, std::uint64_t detections,
                                std::uint64_t seed) {
  const auto p = cell_probabilities(model);
  if (p.no_photon + p.not_captured >= 1.0) {
    throw std::invalid_argument("scene produces no detections");
  }
  CountTable table = CountTable::empty(model.layout.K, seed);
  for (std::uint64_t t = 0; table.detections() < detections; ++t) {
    Rng rng = make_stream(seed, t);
    table.add(run_protocol(model, rng));
  }
  return table;
}

CountTable counts_from_detections(const std::vector<DetectionLine>& lines, int K) {
  CountTable t = CountTable::empty(K, lines.empty() ? 0 : lines.front().seed);
  for (const auto& d : lines) {
    if (d.q < 0 || d.q >= K) throw std::invalid_argument("detection mode out of range");
    if (d.sign != 1 && d.sign != -1) throw std::invalid_argument("detection sign must be +-1");
    ++(d.sign > 0 ? t.plus : t.minus)[d.q];
    ++t.trials;
  }
  return t;
}

namespace {

template <typename F>
void for_each_cell(const CountTable& n, const CellProbabilities& p, F&& f) {
  for (int q = 0; q < n.K; ++q) {
    f(n.plus[q], p.plus[q]);
    f(n.minus[q], p.minus[q]);
  }
  f(n.no_photon, p.no_photon);
  f(n.not_captured, p.not_captured);
}

}  // namespace

double max_binomial_z(const CountTable& counts, const CellProbabilities& p) {
  const double N = static_cast<double>(counts.trials);
  double worst = 0.0;
  auto cell = [&](std::uint64_t n, double prob) {
    if (prob <= 0.0) {
      if (n > 0) worst = std::numeric_limits<double>::infinity();
      return;
    }
    if (prob >= 1.0) return;
    const double z = std::abs(static_cast<double>(n) - N * prob) / std::sqrt(N * prob * (1 - prob));
    worst = std::max(worst, z);
  };
  for (int q = 0; q < counts.K; ++q) {
    cell(counts.plus[q], p.plus[q]);
    cell(counts.minus[q], p.minus[q]);
  }
  return worst;
}

ChiSquare chi_square(const CountTable& counts, const CellProbabilities& p) {
  const double N = static_cast<double>(counts.trials);
  ChiSquare c;
  int cells = 0;
  double pooled_n = 0.0, pooled_e = 0.0;
  auto add = [&](double n, double e) {
    c.statistic += (n - e) * (n - e) / e;
    ++cells;
  };
  for_each_cell(counts, p, [&](std::uint64_t n, double prob) {
    if (prob <= 0.0) return;
    const double e = N * prob;
    if (e < 5.0) {
      pooled_n += static_cast<double>(n);
      pooled_e += e;
    } else {
      add(static_cast<double>(n), e);
    }
  });
  if (pooled_e > 0.0) add(pooled_n, pooled_e);
  c.dof = std::max(cells - 1, 0);
  if (c.dof > 0) {
    c.p_value = boost::math::cdf(boost::math::complement(
        boost::math::chi_squared_distribution<double>(c.dof), c.statistic));
  }
  return c;
}

double loglik(double theta, const CountTable& counts, const ApertureGeometry& geom,
              const ModalBasis& basis) {
  const auto p = detected_probabilities(theta, geom, basis);
  double ll = 0.0;
  for (int q = 0; q < counts.K; ++q) {
    for (auto [n, prob] : {std::pair{counts.plus[q], p.plus[q]}, {counts.minus[q], p.minus[q]}}) {
      if (n == 0) continue;
      if (prob <= 0.0) return -std::numeric_limits<double>::infinity();
      ll += static_cast<double>(n) * std::log(prob);
    }
  }
  return ll;
}

SearchInterval default_interval(const ApertureGeometry& geom) {
  double hi = geom.sigma / 2.0;
  if (geom.beta > 0.0) hi = std::min(hi, std::numbers::pi / (2.0 * geom.beta));
  return {0.0, hi};
}

EstimationResult estimate_theta(const CountTable& counts, const ApertureGeometry& geom,
                                const ModalBasis& basis, SearchInterval iv) {
  if (!(iv.hi > iv.lo) || iv.lo < 0.0) throw std::invalid_argument("invalid search interval");
  if (counts.K != basis.K()) throw std::invalid_argument("count table K does not match basis");
  const std::uint64_t n = counts.detections();
  if (n < 100) {
    throw std::invalid_argument("at least 100 detections required, got " + std::to_string(n));
  }
  const double width = iv.hi - iv.lo;
  constexpr int kGrid = 256;
  auto f = [&](double t) { return loglik(t, counts, geom, basis); };
  std::vector<double> grid(kGrid), value(kGrid);
  int best = 0;
  for (int i = 0; i < kGrid; ++i) {
    grid[i] = iv.lo + width * (i + 1) / kGrid;
    value[i] = f(grid[i]);
    if (value[i] > value[best]) best = i;
  }
  const double vmax = value[best];
  double vmin = vmax;
  for (double v : value) {
    if (std::isfinite(v)) vmin = std::min(vmin, v);
  }
  if (!std::isfinite(vmax) || vmax - vmin <= 1e-12 * (1.0 + std::abs(vmax))) {
    throw NonIdentifiable("non-identifiable: likelihood is flat over the search interval");
  }
  double a = best > 0 ? grid[best - 1] : iv.lo + 1e-12 * width;
  double b = best + 1 < kGrid ? grid[best + 1] : iv.hi;
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > 1e-12 * width) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = f(x1);
    }
  }
  EstimationResult r;
  r.theta_hat = 0.5 * (a + b);
  r.loglik = f(r.theta_hat);
  if (r.loglik < vmax) {
    r.theta_hat = grid[best];
    r.loglik = vmax;
  }
  r.fisher_per_detection = cfi_breakdown(r.theta_hat, geom, basis).per_detection;
  r.detections = n;
  r.ci_half_width = 1.96 / std::sqrt(static_cast<double>(n) * r.fisher_per_detection);
  r.interval = iv;
  r.at_boundary = r.theta_hat - iv.lo < 1e-6 * width || iv.hi - r.theta_hat < 1e-6 * width;
  return r;
}

EstimationResult estimate_theta(const CountTable& counts, const ApertureGeometry& geom,
                                const ModalBasis& basis) {
  return estimate_theta(counts, geom, basis, default_interval(geom));
}

ReplicateStudy replicate_study(const ProtocolModel& model, const ApertureGeometry& geom,
                               const ModalBasis& basis, std::size_t replicates,
                               std::uint64_t detections, std::uint64_t seed, Execution exec) {
  return replicate_study(model, geom, basis, replicates, detections, seed, default_interval(geom),
                         exec);
}

ReplicateStudy replicate_study(const ProtocolModel& model, const ApertureGeometry& geom,
                               const ModalBasis& basis, std::size_t replicates,
                               std::uint64_t detections, std::uint64_t seed,
                               SearchInterval interval, Execution exec) {
  if (replicates < 2) throw std::invalid_argument("need at least two replicates");
  ReplicateStudy s;
  s.theta_true = model.scene.theta;
  s.detections = detections;
  s.theta_hat.assign(replicates, 0.0);
  s.covered.assign(replicates, 0);
  s.boundary.assign(replicates, 0);
  auto body = [&](std::size_t i) {
    const CountTable t = run_until_detections(model, detections, derive_seed(seed, i));
    const EstimationResult e = estimate_theta(t, geom, basis, interval);
    s.theta_hat[i] = e.theta_hat;
    s.covered[i] = std::abs(e.theta_hat - s.theta_true) <= e.ci_half_width;
    s.boundary[i] = e.at_boundary;
  };
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (long long i = 0; i < static_cast<long long>(replicates); ++i) {
      body(static_cast<std::size_t>(i));
    }
  } else {
    for (std::size_t i = 0; i < replicates; ++i) body(i);
  }
  const double R = static_cast<double>(replicates);
  for (std::size_t i = 0; i < replicates; ++i) {
    s.mean += s.theta_hat[i] / R;
    s.coverage += s.covered[i] / R;
  }
  std::vector<double> err(replicates);
  for (std::size_t i = 0; i < replicates; ++i) {
    s.variance += (s.theta_hat[i] - s.mean) * (s.theta_hat[i] - s.mean) / (R - 1.0);
    err[i] = std::abs(s.theta_hat[i] - s.theta_true);
  }
  std::sort(err.begin(), err.end());
  s.median_abs_error = replicates % 2 ? err[replicates / 2]
                                      : 0.5 * (err[replicates / 2 - 1] + err[replicates / 2]);
  const double I1 = cfi_breakdown(s.theta_true, geom, basis).per_detection;
  s.cramer_rao = 1.0 / (static_cast<double>(detections) * I1);
  s.variance_ratio = s.variance / s.cramer_rao;
  return s;
}

void write_study_csv(std::ostream& os, const ReplicateStudy& s) {
  os << "replicate,theta_hat,covered,at_boundary\n";
  for (std::size_t i = 0; i < s.theta_hat.size(); ++i) {
    os << i << ',' << num(s.theta_hat[i]) << ',' << int(s.covered[i]) << ','
       << int(s.boundary[i]) << '\n';
  }
  os << "# theta_true=" << num(s.theta_true) << " detections=" << s.detections
     << " mean=" << num(s.mean) << " variance=" << num(s.variance)
     << " cramer_rao=" << num(s.cramer_rao) << " ratio=" << num(s.variance_ratio)
     << " coverage=" << num(s.coverage) << '\n';
}

}  // namespace ebl
