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

#include "ebl/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

namespace ebl {
namespace {

using Vec = std::vector<cplx>;

constexpr double kInvSqrt2 = 0.70710678118654752440;

// Register of memory and ancilla qubits, replicated for every photonic
// basis state j (0 = vacuum, 1 + t = photon in photonic qubit t).
class Circuit {
 public:
  Circuit(int photonic, int qubits) : photonic_(photonic), qubits_(qubits) {
    dim_ = std::size_t{1} << qubits;
    psi_.assign(static_cast<std::size_t>(photonic + 1) * dim_, 0.0);
  }

  std::size_t dim() const { return dim_; }
  cplx& at(int j, std::size_t r) { return psi_[static_cast<std::size_t>(j) * dim_ + r]; }
  const Vec& data() const { return psi_; }

  void h(int bit) {
    const std::size_t mask = std::size_t{1} << bit;
    for (std::size_t base = 0; base < psi_.size(); base += dim_) {
      for (std::size_t r = 0; r < dim_; ++r) {
        if (r & mask) continue;
        const cplx a0 = psi_[base + r];
        const cplx a1 = psi_[base + (r | mask)];
        psi_[base + r] = (a0 + a1) * kInvSqrt2;
        psi_[base + (r | mask)] = (a0 - a1) * kInvSqrt2;
      }
    }
  }

  void cnot(int control, int target) {
    const std::size_t c = std::size_t{1} << control;
    const std::size_t t = std::size_t{1} << target;
    for (std::size_t base = 0; base < psi_.size(); base += dim_) {
      for (std::size_t r = 0; r < dim_; ++r) {
        if ((r & c) && !(r & t)) std::swap(psi_[base + r], psi_[base + (r | t)]);
      }
    }
  }

  void cz(int control, int target) {
    const std::size_t c = std::size_t{1} << control;
    const std::size_t t = std::size_t{1} << target;
    for (std::size_t base = 0; base < psi_.size(); base += dim_) {
      for (std::size_t r = 0; r < dim_; ++r) {
        if ((r & c) && (r & t)) psi_[base + r] = -psi_[base + r];
      }
    }
  }

  // CNOT controlled by photonic qubit `photon` (0-based) on register bit.
  void photon_cnot(int photon, int target) {
    const std::size_t t = std::size_t{1} << target;
    const std::size_t base = static_cast<std::size_t>(photon + 1) * dim_;
    for (std::size_t r = 0; r < dim_; ++r) {
      if (!(r & t)) std::swap(psi_[base + r], psi_[base + (r | t)]);
    }
  }

 private:
  int photonic_;
  int qubits_;
  std::size_t dim_;
  Vec psi_;
};

int bit_of(int value, int k, int Mbar) { return (value >> (Mbar - k)) & 1; }

// Outcome distribution for one register state after the photonic record is
// fixed: ancilla X outcomes, then E/F X outcomes, tracing out the rest.
struct Partial {
  std::vector<std::uint8_t> parity;
  std::vector<std::uint8_t> ef;
  bool detection = false;
  int m = 0;
  int q = 0;
  int zeta = 0;
  double p = 0.0;
};

}  // namespace

Distribution oracle_statevector(const TwoPointScene& scene, const ApertureGeometry& geom,
                                const ModalBasis& basis, const OracleLimits& limits) {
  const int K = basis.K();
  const int M = scene.M;
  int Mbar = 0;
  while ((1 << Mbar) < M + 1) ++Mbar;
  const int pairs = K * Mbar;
  const int qubits = 4 * pairs;
  const int photonic = 2 * K * M;
  if (qubits >= 62 || photonic > 24 ||
      (static_cast<double>(photonic + 1) * std::ldexp(1.0, qubits) >
       static_cast<double>(limits.max_amplitudes))) {
    throw std::length_error("state vector size limit exceeded");
  }
  auto mem_a = [&](int k, int i) { return i * Mbar + (k - 1); };
  auto mem_b = [&](int k, int i) { return pairs + i * Mbar + (k - 1); };
  auto anc_c = [&](int k, int i) { return 2 * pairs + i * Mbar + (k - 1); };
  auto anc_d = [&](int k, int i) { return 3 * pairs + i * Mbar + (k - 1); };
  auto photon_qubit = [&](int site, int m, int q) { return site * K * M + (m - 1) * K + q; };

  // Mixture: vacuum, photon from star s in bin m, photon outside the modes.
  struct Component {
    double weight;
    std::vector<std::pair<int, cplx>> photon;  // (j, amplitude); j = 0 vacuum
  };
  std::vector<Component> components;
  const double eps = scene.epsilon;
  const double vac = 1.0 - M * eps;
  double lost = 0.0;
  for (int s = 1; s <= 2; ++s) {
    const double x = scene.position(s);
    const auto g = gamma_set(geom, basis, x);
    const double capture = std::min(1.0, g.capture());
    lost += 0.5 * eps * M * (1.0 - capture);
    if (capture <= 0.0 || eps <= 0.0) continue;
    const double norm = std::sqrt(g.capture());
    for (int m = 1; m <= M; ++m) {
      Component c{0.5 * eps * capture, {}};
      for (int q = 0; q < K; ++q) {
        const double e = g.value[q] / norm;
        c.photon.push_back({1 + photon_qubit(0, m, q), e * std::polar(kInvSqrt2, -geom.beta * x)});
        c.photon.push_back({1 + photon_qubit(1, m, q), e * std::polar(kInvSqrt2, geom.beta * x)});
      }
      components.push_back(std::move(c));
    }
  }
  if (vac + lost > 0.0) components.push_back({vac + lost, {{0, 1.0}}});

  const std::uint64_t n_records = std::uint64_t{1} << photonic;
  const double amp_h = std::ldexp(1.0, -K * M);  // |<h|j>| for every j
  Distribution dist;

  for (const auto& comp : components) {
    Circuit circ(photonic, qubits);
    for (const auto& [j, a] : comp.photon) circ.at(j, 0) = a;
    for (int i = 0; i < K; ++i) {
      for (int k = 1; k <= Mbar; ++k) {
        circ.h(anc_c(k, i));
        circ.cnot(anc_c(k, i), anc_d(k, i));
      }
    }
    // Encoding: photonic qubit (site, m, q) drives memory (k, q) for every
    // binary digit k of m that is one.
    for (int site = 0; site < 2; ++site) {
      for (int m = 1; m <= M; ++m) {
        for (int q = 0; q < K; ++q) {
          for (int k = 1; k <= Mbar; ++k) {
            if (!bit_of(m, k, Mbar)) continue;
            circ.photon_cnot(photon_qubit(site, m, q), site == 0 ? mem_a(k, q) : mem_b(k, q));
          }
        }
      }
    }
    // Parity check CZs and the ancilla X measurement basis change. These act
    // on other qubits than the photonic measurement and commute with it.
    for (int i = 0; i < K; ++i) {
      for (int k = 1; k <= Mbar; ++k) {
        circ.cz(mem_a(k, i), anc_c(k, i));
        circ.cz(mem_b(k, i), anc_d(k, i));
      }
    }
    for (int i = 0; i < K; ++i) {
      for (int k = 1; k <= Mbar; ++k) {
        circ.h(anc_c(k, i));
        circ.h(anc_d(k, i));
      }
    }

    std::vector<int> support;
    for (const auto& [j, a] : comp.photon) support.push_back(j);

    // The post-measurement state depends on h only through the bits at the
    // support; cache the outcome list per sign pattern.
    std::map<std::uint32_t, std::vector<Partial>> cache;
    const std::size_t mem_dim = std::size_t{1} << (2 * pairs);
    const std::size_t anc_dim = mem_dim;

    for (std::uint64_t hi = 0; hi < n_records; ++hi) {
      std::uint32_t sig = 0;
      for (std::size_t u = 0; u < support.size(); ++u) {
        const int j = support[u];
        if (j > 0 && ((hi >> (j - 1)) & 1)) sig |= 1u << u;
      }
      auto it = cache.find(sig);
      if (it == cache.end()) {
        Vec phi(circ.dim(), 0.0);
        for (std::size_t u = 0; u < support.size(); ++u) {
          const int j = support[u];
          const double sign = (sig >> u) & 1 ? -1.0 : 1.0;
          for (std::size_t r = 0; r < circ.dim(); ++r) {
            phi[r] += sign * amp_h * circ.at(j, r);
          }
        }
        std::vector<Partial> parts;
        for (std::size_t a = 0; a < anc_dim; ++a) {
          Vec sub(mem_dim);
          double norm = 0.0;
          for (std::size_t mbits = 0; mbits < mem_dim; ++mbits) {
            sub[mbits] = phi[(a << (2 * pairs)) | mbits];
            norm += std::norm(sub[mbits]);
          }
          if (norm <= 0.0) continue;
          Partial base;
          base.parity.assign(pairs, 0);
          int column = -1;
          bool mixed = false;
          for (int i = 0; i < K; ++i) {
            for (int k = 1; k <= Mbar; ++k) {
              const int c = (a >> (anc_c(k, i) - 2 * pairs)) & 1;
              const int d = (a >> (anc_d(k, i) - 2 * pairs)) & 1;
              if (c != d) {
                base.parity[i * Mbar + (k - 1)] = 1;
                if (column >= 0 && column != i) mixed = true;
                column = i;
              }
            }
          }
          if (mixed) throw std::logic_error("oracle: odd parities in two columns");
          if (column < 0) {
            base.p = norm;
            parts.push_back(base);
            continue;
          }
          base.detection = true;
          base.q = column;
          std::vector<int> ef_bits;
          for (int k = 1; k <= Mbar; ++k) {
            if (!base.parity[column * Mbar + (k - 1)]) continue;
            ef_bits.push_back(mem_a(k, column));
            ef_bits.push_back(mem_b(k, column));
          }
          base.m = 0;
          for (int k = 1; k <= Mbar; ++k) base.m = 2 * base.m + base.parity[column * Mbar + (k - 1)];
          for (int b : ef_bits) {
            const std::size_t mask = std::size_t{1} << b;
            for (std::size_t r = 0; r < mem_dim; ++r) {
              if (r & mask) continue;
              const cplx x0 = sub[r];
              const cplx x1 = sub[r | mask];
              sub[r] = (x0 + x1) * kInvSqrt2;
              sub[r | mask] = (x0 - x1) * kInvSqrt2;
            }
          }
          std::map<std::uint32_t, double> ef_prob;
          for (std::size_t r = 0; r < mem_dim; ++r) {
            const double p = std::norm(sub[r]);
            if (p <= 0.0) continue;
            std::uint32_t key = 0;
            for (int b : ef_bits) key = (key << 1) | static_cast<std::uint32_t>((r >> b) & 1);
            ef_prob[key] += p;
          }
          const int n = static_cast<int>(ef_bits.size());
          for (const auto& [key, p] : ef_prob) {
            Partial part = base;
            part.ef.resize(n);
            int odd = 0;
            for (int t = 0; t < n; ++t) part.ef[t] = static_cast<std::uint8_t>((key >> (n - 1 - t)) & 1);
            for (int t = 0; t < n; t += 2) odd += part.ef[t] != part.ef[t + 1] ? 1 : 0;
            part.zeta = odd % 2 == 0 ? 1 : -1;
            part.p = p;
            parts.push_back(std::move(part));
          }
        }
        it = cache.emplace(sig, std::move(parts)).first;
      }
      const auto h = PhotonicXRecord::from_index(K, M, hi);
      for (const auto& part : it->second) {
        int sign = 0;
        if (part.detection) {
          const int t = (part.m - 1) * K + part.q;
          const int f = ((hi >> t) & 1) == ((hi >> (K * M + t)) & 1) ? 1 : -1;
          sign = part.zeta * f;
        }
        dist[observed_key(h, part.parity, part.ef, part.detection, part.q, sign)] +=
            comp.weight * part.p;
      }
    }
  }
  return dist;
}

GhzParityReport verify_ghz_parity_rule(int n_odd) {
  if (n_odd < 1 || n_odd > 10) throw std::out_of_range("pair count out of range");
  const int n = 2 * n_odd;
  const std::size_t dim = std::size_t{1} << n;
  GhzParityReport rep;
  rep.n_odd = n_odd;
  rep.strings = dim;
  rep.exact = true;
  // Qubit order (E_1, F_1, E_2, F_2, ...), E_1 the most significant bit.
  std::size_t e_mask = 0;
  for (int mu = 0; mu < n_odd; ++mu) e_mask |= std::size_t{1} << (n - 1 - 2 * mu);
  const std::size_t f_mask = (dim - 1) & ~e_mask;
  const double predicted = std::ldexp(1.0, -(n - 1));
  for (int zeta : {1, -1}) {
    Vec psi(dim, 0.0);
    psi[f_mask] = kInvSqrt2;                             // |0_E 1_F>
    psi[e_mask] = static_cast<double>(zeta) * kInvSqrt2;  // |1_E 0_F>
    for (int b = 0; b < n; ++b) {
      const std::size_t mask = std::size_t{1} << b;
      for (std::size_t r = 0; r < dim; ++r) {
        if (r & mask) continue;
        const cplx x0 = psi[r];
        const cplx x1 = psi[r | mask];
        psi[r] = (x0 + x1) * kInvSqrt2;
        psi[r | mask] = (x0 - x1) * kInvSqrt2;
      }
    }
    for (std::size_t r = 0; r < dim; ++r) {
      int odd = 0;
      for (int mu = 0; mu < n_odd; ++mu) {
        odd += ((r >> (n - 1 - 2 * mu)) & 1) != ((r >> (n - 2 - 2 * mu)) & 1) ? 1 : 0;
      }
      const bool consistent = (odd % 2 == 0) == (zeta == 1);
      const double dev = std::abs(std::norm(psi[r]) - (consistent ? predicted : 0.0));
      rep.max_deviation = std::max(rep.max_deviation, dev);
    }
  }
  rep.exact = rep.max_deviation < 1e-14;
  return rep;
}

}  // namespace ebl
