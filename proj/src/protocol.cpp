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

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace ebl {

MemoryLayout MemoryLayout::make(int K, int M) {
  if (K < 1) throw std::invalid_argument("K must be at least 1");
  return {K, M, memory_bits_for(M)};
}

std::vector<std::uint8_t> codeword(int j, int Mbar) {
  if (j < 0 || Mbar < 1 || j >= (1 << Mbar)) throw std::out_of_range("codeword value out of range");
  std::vector<std::uint8_t> w(Mbar);
  for (int k = 1; k <= Mbar; ++k) w[k - 1] = static_cast<std::uint8_t>((j >> (Mbar - k)) & 1);
  return w;
}

int codeword_value(std::span<const std::uint8_t> bits) {
  int v = 0;
  for (auto b : bits) v = 2 * v + (b ? 1 : 0);
  return v;
}

PhotonicXRecord PhotonicXRecord::from_index(int K, int M, std::uint64_t index) {
  PhotonicXRecord h{K, M, std::vector<std::uint8_t>(K * M), std::vector<std::uint8_t>(K * M)};
  const int n = K * M;
  for (int t = 0; t < n; ++t) {
    h.a[t] = static_cast<std::uint8_t>((index >> t) & 1);
    h.b[t] = static_cast<std::uint8_t>((index >> (n + t)) & 1);
  }
  return h;
}

PhotonicXRecord PhotonicXRecord::sample(int K, int M, Rng& rng) {
  PhotonicXRecord h{K, M, std::vector<std::uint8_t>(K * M), std::vector<std::uint8_t>(K * M)};
  for (auto& v : h.a) v = coin(rng) ? 1 : 0;
  for (auto& v : h.b) v = coin(rng) ? 1 : 0;
  return h;
}

int PhotonicXRecord::f(int m, int q) const {
  const int t = (m - 1) * K + q;
  return a.at(t) == b.at(t) ? 1 : -1;
}

std::string PhotonicXRecord::str() const {
  std::string s;
  s.reserve(a.size() + b.size() + 1);
  for (auto v : a) s.push_back(v ? '-' : '+');
  s.push_back('|');
  for (auto v : b) s.push_back(v ? '-' : '+');
  return s;
}

MemoryState encoded_memory(const std::vector<PhotonBranch>& photon, const PhotonicXRecord& h) {
  MemoryState mem;
  if (photon.empty()) return mem;
  mem.m = photon.front().m;
  mem.branches.reserve(photon.size());
  for (const auto& p : photon) {
    if (p.m != mem.m) throw std::invalid_argument("photon branches span several time bins");
    const cplx amp = p.site == Site::A ? static_cast<double>(h.f(p.m, p.q)) * p.amplitude
                                       : p.amplitude;
    mem.branches.push_back({p.site, p.q, amp});
  }
  return mem;
}

EncodeResult encode(const std::vector<PhotonBranch>& photon, const MemoryLayout& layout, Rng& rng) {
  EncodeResult r;
  r.h = PhotonicXRecord::sample(layout.K, layout.M, rng);
  r.memory = encoded_memory(photon, r.h);
  return r;
}

std::vector<double> mode_distribution(const MemoryState& memory, int K) {
  std::vector<double> p(K, 0.0);
  double total = 0.0;
  for (const auto& b : memory.branches) {
    p.at(b.q) += std::norm(b.amplitude);
    total += std::norm(b.amplitude);
  }
  if (total > 0.0) {
    for (double& v : p) v /= total;
  }
  return p;
}

std::vector<std::uint8_t> parity_pattern(const MemoryLayout& layout, int m, int q) {
  std::vector<std::uint8_t> parity(layout.bell_pairs(), 0);
  if (m == 0) return parity;
  const auto w = codeword(m, layout.Mbar);
  for (int k = 1; k <= layout.Mbar; ++k) parity[layout.pair_index(k, q)] = w[k - 1];
  return parity;
}

DecodeRecord resolve_pattern(const MemoryLayout& layout, std::span<const std::uint8_t> parity) {
  if (static_cast<int>(parity.size()) != layout.bell_pairs()) {
    throw std::logic_error("parity pattern has the wrong length");
  }
  DecodeRecord rec;
  rec.parity.assign(parity.begin(), parity.end());
  for (int i = 0; i < layout.K; ++i) {
    int odd = 0;
    for (int k = 1; k <= layout.Mbar; ++k) odd += parity[layout.pair_index(k, i)] ? 1 : 0;
    if (odd == 0) continue;
    if (rec.photon) throw std::logic_error("odd parity pairs span two mode columns");
    rec.photon = true;
    rec.q = i;
    rec.n_odd = odd;
    std::vector<std::uint8_t> w(layout.Mbar);
    for (int k = 1; k <= layout.Mbar; ++k) w[k - 1] = parity[layout.pair_index(k, i)];
    rec.m = codeword_value(w);
  }
  if (rec.photon && rec.m > layout.M) throw std::logic_error("decoded time bin out of range");
  return rec;
}

CollapsedMemory collapse(const MemoryState& memory, int q) {
  CollapsedMemory c{memory.m, q, 0.0, 0.0};
  for (const auto& b : memory.branches) {
    if (b.q != q) continue;
    (b.site == Site::A ? c.a : c.b) += b.amplitude;
  }
  const double n = std::sqrt(std::norm(c.a) + std::norm(c.b));
  if (!(n > 0.0)) throw std::logic_error("collapse onto a mode with zero weight");
  c.a /= n;
  c.b /= n;
  return c;
}

DecodeResult decode_parity(const MemoryState& memory, const MemoryLayout& layout, Rng& rng) {
  DecodeResult r;
  if (memory.vacuum()) {
    r.record = resolve_pattern(layout, parity_pattern(layout, 0, 0));
    return r;
  }
  const auto p = mode_distribution(memory, layout.K);
  const double u = uniform01(rng);
  int q = -1;
  double acc = 0.0;
  for (int i = 0; i < layout.K; ++i) {
    if (p[i] <= 0.0) continue;
    q = i;
    acc += p[i];
    if (u < acc) break;
  }
  r.record = resolve_pattern(layout, parity_pattern(layout, memory.m, q));
  r.collapsed = collapse(memory, q);
  return r;
}

ZetaProbabilities zeta_probabilities(const CollapsedMemory& c) {
  return {std::norm(c.b + c.a) / 2.0, std::norm(c.b - c.a) / 2.0};
}

int zeta_from_ef(std::span<const std::uint8_t> ef) {
  if (ef.size() % 2 != 0) throw std::invalid_argument("E/F string must have even length");
  int odd = 0;
  for (std::size_t mu = 0; mu < ef.size(); mu += 2) odd += (ef[mu] != ef[mu + 1]) ? 1 : 0;
  return odd % 2 == 0 ? 1 : -1;
}

std::vector<std::vector<std::uint8_t>> ef_strings(int n_odd, int zeta) {
  if (n_odd < 1 || n_odd > 12) throw std::out_of_range("E/F pair count out of range");
  const int bits = 2 * n_odd;
  std::vector<std::vector<std::uint8_t>> out;
  out.reserve(std::size_t{1} << (bits - 1));
  std::vector<std::uint8_t> s(bits);
  for (std::uint32_t v = 0; v < (1u << bits); ++v) {
    for (int t = 0; t < bits; ++t) s[t] = static_cast<std::uint8_t>((v >> (bits - 1 - t)) & 1);
    if (zeta_from_ef(s) == zeta) out.push_back(s);
  }
  return out;
}

std::vector<std::uint8_t> sample_ef_string(int n_odd, int zeta, Rng& rng) {
  std::vector<std::uint8_t> s(2 * n_odd);
  for (auto& v : s) v = coin(rng) ? 1 : 0;
  if (zeta_from_ef(s) != zeta) s.back() ^= 1;
  return s;
}

GhzOutcome ghz_measure(const CollapsedMemory& c, int n_odd, int f, Rng& rng) {
  const auto p = zeta_probabilities(c);
  GhzOutcome g;
  g.zeta = uniform01(rng) * (p.plus + p.minus) < p.plus ? 1 : -1;
  g.ef = sample_ef_string(n_odd, g.zeta, rng);
  g.label = phi_label(g.zeta, f);
  return g;
}

ProtocolModel ProtocolModel::make(const TwoPointScene& scene, const ApertureGeometry& geom,
                                  const ModalBasis& basis) {
  ProtocolModel model;
  model.scene = scene;
  model.layout = MemoryLayout::make(basis.K(), scene.M);
  model.arrivals = make_arrival_model(scene, geom, basis);
  for (int s = 1; s <= 2; ++s) {
    if (model.arrivals.capture[s - 1] > 0.0) {
      model.photon[s - 1] = build_branches(scene, geom, basis, s, 1);
    }
  }
  return model;
}

std::vector<PhotonBranch> ProtocolModel::branches(int s, int m) const {
  auto out = photon.at(s - 1);
  for (auto& b : out) b.m = m;
  return out;
}

OutcomeRecord run_protocol(const ProtocolModel& model, Rng& rng) {
  OutcomeRecord r;
  r.arrival = sample_arrival(model.arrivals, rng);
  const auto photon = r.arrival.kind == ArrivalKind::Photon
                          ? model.branches(r.arrival.s, r.arrival.m)
                          : std::vector<PhotonBranch>{};
  auto enc = encode(photon, model.layout, rng);
  r.h = std::move(enc.h);
  const auto dec = decode_parity(enc.memory, model.layout, rng);
  r.parity = dec.record.parity;
  if (!dec.record.photon) {
    r.kind = r.arrival.kind == ArrivalKind::NotCaptured ? OutcomeKind::NotCaptured
                                                        : OutcomeKind::NoPhoton;
    return r;
  }
  r.kind = OutcomeKind::Detection;
  r.m = dec.record.m;
  r.q = dec.record.q;
  r.f = r.h.f(r.m, r.q);
  auto g = ghz_measure(dec.collapsed, dec.record.n_odd, r.f, rng);
  r.ef = std::move(g.ef);
  r.zeta = g.zeta;
  r.sign = g.label;
  return r;
}

OutcomeRecord run_protocol(const TwoPointScene& scene, const ApertureGeometry& geom,
                           const ModalBasis& basis, Rng& rng) {
  return run_protocol(ProtocolModel::make(scene, geom, basis), rng);
}

std::string observed_key(const PhotonicXRecord& h, std::span<const std::uint8_t> parity,
                         std::span<const std::uint8_t> ef, bool detection, int q, int sign) {
  std::string key = "h=" + h.str() + " p=";
  for (auto v : parity) key.push_back(v ? '1' : '0');
  key += " ef=";
  for (auto v : ef) key.push_back(v ? '1' : '0');
  key += " L=";
  if (detection) {
    key += "q" + std::to_string(q) + (sign > 0 ? "+" : "-");
  } else {
    key += "none";
  }
  return key;
}

std::string observed_key(const OutcomeRecord& r) {
  return observed_key(r.h, r.parity, r.ef, r.kind == OutcomeKind::Detection, r.q, r.sign);
}

Distribution exact_distribution(const ProtocolModel& model) {
  const MemoryLayout& L = model.layout;
  const int nh = 2 * L.K * L.M;
  if (nh > 24) throw std::length_error("photonic record too long to enumerate");
  const std::uint64_t n_records = std::uint64_t{1} << nh;
  const double ph = 1.0 / static_cast<double>(n_records);
  const auto vacuum_parity = parity_pattern(L, 0, 0);

  Distribution dist;
  for (const auto& [arrival, weight] : arrival_distribution(model.arrivals)) {
    if (arrival.kind != ArrivalKind::Photon) {
      for (std::uint64_t i = 0; i < n_records; ++i) {
        const auto h = PhotonicXRecord::from_index(L.K, L.M, i);
        dist[observed_key(h, vacuum_parity, {}, false, 0, 0)] += weight * ph;
      }
      continue;
    }
    const auto photon = model.branches(arrival.s, arrival.m);
    for (std::uint64_t i = 0; i < n_records; ++i) {
      const auto h = PhotonicXRecord::from_index(L.K, L.M, i);
      const auto mem = encoded_memory(photon, h);
      const auto pq = mode_distribution(mem, L.K);
      for (int q = 0; q < L.K; ++q) {
        if (pq[q] <= 0.0) continue;
        const auto rec = resolve_pattern(L, parity_pattern(L, mem.m, q));
        const auto c = collapse(mem, q);
        const auto pz = zeta_probabilities(c);
        const int f = h.f(rec.m, rec.q);
        for (int zeta : {1, -1}) {
          const double p = zeta > 0 ? pz.plus : pz.minus;
          if (p <= 0.0) continue;
          const auto strings = ef_strings(rec.n_odd, zeta);
          const double each = weight * ph * pq[q] * p / static_cast<double>(strings.size());
          for (const auto& ef : strings) {
            dist[observed_key(h, rec.parity, ef, true, rec.q, phi_label(zeta, f))] += each;
          }
        }
      }
    }
  }
  return dist;
}

double total_variation(const Distribution& p, const Distribution& q) {
  double tv = 0.0;
  for (const auto& [k, v] : p) {
    const auto it = q.find(k);
    tv += std::abs(v - (it == q.end() ? 0.0 : it->second));
  }
  for (const auto& [k, v] : q) {
    if (!p.contains(k)) tv += std::abs(v);
  }
  return 0.5 * tv;
}

Distribution label_marginal(const Distribution& joint) {
  Distribution out;
  for (const auto& [k, v] : joint) {
    const auto pos = k.rfind("L=");
    out[pos == std::string::npos ? k : k.substr(pos + 2)] += v;
  }
  return out;
}

void write_detection(std::ostream& os, const DetectionLine& d) {
  os << d.trial << ',' << d.m << ',' << d.q << ',' << (d.sign > 0 ? "+1" : "-1") << ',' << d.seed
     << '\n';
}

std::vector<DetectionLine> read_detections(std::istream& is) {
  std::vector<DetectionLine> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line.rfind("trial", 0) == 0 || line[0] == '#') continue;
    std::istringstream ss(line);
    DetectionLine d;
    char c1 = 0, c2 = 0, c3 = 0, c4 = 0;
    if (!(ss >> d.trial >> c1 >> d.m >> c2 >> d.q >> c3 >> d.sign >> c4 >> d.seed) || c1 != ',' ||
        c2 != ',' || c3 != ',' || c4 != ',' || (d.sign != 1 && d.sign != -1) || d.m < 1 ||
        d.q < 0) {
      throw std::invalid_argument("malformed detection record at line " + std::to_string(lineno));
    }
    out.push_back(d);
  }
  return out;
}

}  // namespace ebl
