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

#include "ebl/compiler.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <sstream>

#include "ebl/format.hpp"
#include "ebl/photon_state.hpp"

namespace ebl {
namespace {

using std::numbers::pi;
using C = std::complex<double>;
constexpr double kInvSqrt2 = 0.70710678118654752440;

// Finds (alpha, beta, theta, phi) with W = diag(e^{i alpha}, e^{i beta}) M(theta, phi).
struct Split2 {
  double alpha, beta, theta, phi;
};

Split2 split_2x2(const Eigen::Matrix2cd& W) {
  const double c = std::abs(W(0, 0));
  const double s = std::abs(W(0, 1));
  Split2 r{};
  r.theta = 2.0 * std::atan2(s, c);
  const double h = r.theta / 2.0;
  if (s < 1e-15) {
    r.phi = 0.0;
    r.alpha = std::arg(W(0, 0)) - h;
    r.beta = std::arg(W(1, 1)) - h;
  } else if (c < 1e-15) {
    r.phi = 0.0;
    r.alpha = std::arg(W(0, 1)) - h - pi / 2;
    r.beta = std::arg(W(1, 0)) - h - pi / 2;
  } else {
    r.alpha = std::arg(W(0, 1)) - h - pi / 2;
    r.beta = std::arg(W(1, 1)) - h;
    r.phi = std::arg(W(0, 0)) - r.alpha - h;
  }
  return r;
}

void apply_left(Matrix& V, int row, const Eigen::Matrix2cd& M) {
  const Eigen::RowVectorXcd r0 = V.row(row);
  const Eigen::RowVectorXcd r1 = V.row(row + 1);
  V.row(row) = M(0, 0) * r0 + M(0, 1) * r1;
  V.row(row + 1) = M(1, 0) * r0 + M(1, 1) * r1;
}

void apply_right(Matrix& V, int col, const Eigen::Matrix2cd& M) {
  const Eigen::VectorXcd c0 = V.col(col);
  const Eigen::VectorXcd c1 = V.col(col + 1);
  V.col(col) = c0 * M(0, 0) + c1 * M(1, 0);
  V.col(col + 1) = c0 * M(0, 1) + c1 * M(1, 1);
}

double phase_distance(const Eigen::VectorXcd& got, const Eigen::VectorXcd& want) {
  const C overlap = want.dot(got);
  const C phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : C(1.0);
  return (got - phase * want).norm();
}

void apply_two_qubit(QubitRegister& reg, int qa, int qb, const Eigen::Matrix4cd& G) {
  auto& psi = reg.amplitudes();
  const Eigen::Index dim = psi.size();
  const Eigen::Index ma = Eigen::Index{1} << qa;
  const Eigen::Index mb = Eigen::Index{1} << qb;
  for (Eigen::Index base = 0; base < dim; ++base) {
    if ((base & ma) || (base & mb)) continue;
    const Eigen::Index idx[4] = {base, base | mb, base | ma, base | ma | mb};
    Eigen::Vector4cd v;
    for (int k = 0; k < 4; ++k) v[k] = psi[idx[k]];
    const Eigen::Vector4cd w = G * v;
    for (int k = 0; k < 4; ++k) psi[idx[k]] = w[k];
  }
}

}  // namespace

Eigen::Matrix2cd mzi_matrix(double theta, double phi) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  const C g = std::polar(1.0, theta / 2.0);
  const C e = std::polar(1.0, phi);
  Eigen::Matrix2cd M;
  M << g * c * e, g * C(0, s), g * C(0, s) * e, g * c;
  return M;
}

bool is_unitary(const Matrix& U, double tol) {
  if (U.rows() != U.cols() || U.rows() == 0) return false;
  return (U.adjoint() * U - Matrix::Identity(U.rows(), U.cols())).norm() < tol;
}

MziMesh clements_decompose(const Matrix& U, double tol) {
  if (U.rows() != U.cols() || U.rows() == 0) throw std::invalid_argument("matrix must be square");
  if (!is_unitary(U, tol)) throw std::invalid_argument("matrix is not unitary");
  const int N = static_cast<int>(U.rows());
  Matrix V = U;
  std::vector<Mzi> right;  // V <- V M^dagger, in application order
  std::vector<Mzi> left;   // V <- M V, in application order
  for (int k = 0, i = N - 2; i >= 0; ++k, --i) {
    if (k % 2 == 0) {
      for (int j = N - 2 - i; j >= 0; --j) {
        const int row = i + j + 1;
        const C a = V(row, j);
        const C b = V(row, j + 1);
        Mzi z{j, 0.0, 0.0};
        if (std::abs(a) > 0.0) {
          z.theta = 2.0 * std::atan2(std::abs(a), std::abs(b));
          z.phi = std::arg(a) - std::arg(b) - pi / 2;
        }
        apply_right(V, j, mzi_matrix(z.theta, z.phi).adjoint());
        V(row, j) = 0.0;
        right.push_back(z);
      }
    } else {
      for (int j = 0; j <= N - 2 - i; ++j) {
        const int row = i + j;
        const C x = V(row, j);
        const C y = V(row + 1, j);
        Mzi z{row, 0.0, 0.0};
        if (std::abs(y) > 0.0) {
          z.theta = 2.0 * std::atan2(std::abs(y), std::abs(x));
          z.phi = std::arg(y) - std::arg(x) + pi / 2;
        }
        apply_left(V, row, mzi_matrix(z.theta, z.phi));
        V(row + 1, j) = 0.0;
        left.push_back(z);
      }
    }
  }
  // V = L U R^dagger is diagonal, so U = L^dagger D R. Move D to the
  // output by rewriting each L_t^dagger D as D' M'.
  Eigen::VectorXcd d = V.diagonal();
  std::vector<Mzi> pushed;
  for (auto it = left.rbegin(); it != left.rend(); ++it) {
    const int m = it->mode;
    Eigen::Matrix2cd W = mzi_matrix(it->theta, it->phi).adjoint();
    W.col(0) *= d[m];
    W.col(1) *= d[m + 1];
    const Split2 s = split_2x2(W);
    d[m] = std::polar(1.0, s.alpha);
    d[m + 1] = std::polar(1.0, s.beta);
    pushed.push_back({m, s.theta, s.phi});
  }
  MziMesh mesh;
  mesh.dimension = N;
  mesh.mzis = right;
  mesh.mzis.insert(mesh.mzis.end(), pushed.begin(), pushed.end());
  mesh.output_phases.resize(N);
  for (int i = 0; i < N; ++i) mesh.output_phases[i] = std::arg(d[i]);
  return mesh;
}

Matrix recompose(const MziMesh& mesh) {
  const int N = mesh.dimension;
  Matrix T = Matrix::Identity(N, N);
  for (const auto& z : mesh.mzis) apply_left(T, z.mode, mzi_matrix(z.theta, z.phi));
  for (int i = 0; i < N; ++i) T.row(i) *= std::polar(1.0, mesh.output_phases[i]);
  return T;
}

Matrix random_unitary(int D, Rng& rng) {
  if (D < 1) throw std::invalid_argument("dimension must be positive");
  std::normal_distribution<double> g(0.0, kInvSqrt2);
  Matrix Z(D, D);
  for (int i = 0; i < D; ++i) {
    for (int j = 0; j < D; ++j) Z(i, j) = C(g(rng), g(rng));
  }
  Eigen::HouseholderQR<Matrix> qr(Z);
  Matrix Q = qr.householderQ();
  const Matrix R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < D; ++j) {
    const C r = R(j, j);
    Q.col(j) *= std::abs(r) > 0 ? r / std::abs(r) : C(1.0);
  }
  return Q;
}

double frobenius_distance(const Matrix& A, const Matrix& B) { return (A - B).norm(); }

Eigen::Matrix4cd bs_gadget_matrix() {
  Eigen::Matrix4cd cnot = Eigen::Matrix4cd::Zero();
  cnot(0, 0) = cnot(1, 1) = cnot(3, 2) = cnot(2, 3) = 1.0;
  Eigen::Matrix4cd hA = Eigen::Matrix4cd::Zero();
  // H on the left qubit: |0b> -> (|0b> + |1b>)/sqrt2, |1b> -> (|0b> - |1b>)/sqrt2.
  for (int b = 0; b < 2; ++b) {
    hA(b, b) = kInvSqrt2;
    hA(2 + b, b) = kInvSqrt2;
    hA(b, 2 + b) = kInvSqrt2;
    hA(2 + b, 2 + b) = -kInvSqrt2;
  }
  return cnot * hA * cnot;
}

PairState bs_gadget(const PairState& state) { return bs_gadget_matrix() * state; }

void BellPairPool::take() {
  if (available_ == 0) throw std::runtime_error("no Bell pair available");
  --available_;
  ++consumed_;
}

QubitRegister::QubitRegister(int qubits) : n_(qubits) {
  if (qubits < 1 || qubits > 24) throw std::invalid_argument("register size out of range");
  psi_ = Eigen::VectorXcd::Zero(Eigen::Index{1} << qubits);
  psi_[0] = 1.0;
}

void QubitRegister::x(int q) {
  const Eigen::Index m = Eigen::Index{1} << q;
  for (Eigen::Index i = 0; i < psi_.size(); ++i) {
    if (!(i & m)) std::swap(psi_[i], psi_[i | m]);
  }
}

void QubitRegister::z(int q) {
  const Eigen::Index m = Eigen::Index{1} << q;
  for (Eigen::Index i = 0; i < psi_.size(); ++i) {
    if (i & m) psi_[i] = -psi_[i];
  }
}

void QubitRegister::h(int q) {
  const Eigen::Index m = Eigen::Index{1} << q;
  for (Eigen::Index i = 0; i < psi_.size(); ++i) {
    if (i & m) continue;
    const C a = psi_[i];
    const C b = psi_[i | m];
    psi_[i] = (a + b) * kInvSqrt2;
    psi_[i | m] = (a - b) * kInvSqrt2;
  }
}

void QubitRegister::phase(int q, double angle) {
  const Eigen::Index m = Eigen::Index{1} << q;
  const C e = std::polar(1.0, angle);
  for (Eigen::Index i = 0; i < psi_.size(); ++i) {
    if (i & m) psi_[i] *= e;
  }
}

void QubitRegister::cnot(int control, int target) {
  const Eigen::Index c = Eigen::Index{1} << control;
  const Eigen::Index t = Eigen::Index{1} << target;
  for (Eigen::Index i = 0; i < psi_.size(); ++i) {
    if ((i & c) && !(i & t)) std::swap(psi_[i], psi_[i | t]);
  }
}

double QubitRegister::project(int q, int outcome) {
  const Eigen::Index m = Eigen::Index{1} << q;
  const double before = psi_.squaredNorm();
  for (Eigen::Index i = 0; i < psi_.size(); ++i) {
    if (((i & m) != 0) != (outcome != 0)) psi_[i] = 0.0;
  }
  return before > 0.0 ? psi_.squaredNorm() / before : 0.0;
}

int QubitRegister::measure(int q, Rng& rng) {
  const Eigen::Index m = Eigen::Index{1} << q;
  double p1 = 0.0;
  for (Eigen::Index i = 0; i < psi_.size(); ++i) {
    if (i & m) p1 += std::norm(psi_[i]);
  }
  const int outcome = uniform01(rng) * psi_.squaredNorm() < p1 ? 1 : 0;
  project(q, outcome);
  normalize();
  return outcome;
}

void QubitRegister::normalize() {
  const double n = psi_.norm();
  if (n > 0.0) psi_ /= n;
}

namespace {

template <typename Outcome>
TeleportRecord teleport_impl(QubitRegister& reg, int control, int target, int anc_c, int anc_t,
                             BellPairPool& pool, Outcome&& outcome) {
  pool.take();
  reg.h(anc_c);
  reg.cnot(anc_c, anc_t);
  TeleportRecord rec;
  reg.cnot(control, anc_c);
  double p1 = 0.0;
  rec.m1 = outcome(anc_c, p1);
  if (rec.m1) {
    reg.x(anc_t);
    reg.x(anc_c);
  }
  reg.cnot(anc_t, target);
  reg.h(anc_t);
  double p2 = 0.0;
  rec.m2 = outcome(anc_t, p2);
  if (rec.m2) {
    reg.z(control);
    reg.x(anc_t);
  }
  rec.probability = p1 * p2;
  return rec;
}

}  // namespace

TeleportRecord teleported_cnot(QubitRegister& reg, int control, int target, int anc_c, int anc_t,
                               BellPairPool& pool, Rng& rng) {
  return teleport_impl(reg, control, target, anc_c, anc_t, pool, [&](int q, double& p) {
    const QubitRegister before = reg;
    const int m = reg.measure(q, rng);
    QubitRegister probe = before;
    p = probe.project(q, m);
    return m;
  });
}

TeleportRecord teleported_cnot_branch(QubitRegister& reg, int control, int target, int anc_c,
                                      int anc_t, BellPairPool& pool, int m1, int m2) {
  int call = 0;
  return teleport_impl(reg, control, target, anc_c, anc_t, pool, [&](int q, double& p) {
    const int m = call++ == 0 ? m1 : m2;
    p = reg.project(q, m);
    return m;
  });
}

PairState cnot_pair(const PairState& state) {
  PairState out = state;
  std::swap(out[2], out[3]);
  return out;
}

namespace {

// Pair state (A = control = qubit 1, B = target = qubit 0) in a 4-qubit
// register with the Bell pair on qubits 2 and 3.
QubitRegister load_pair(const PairState& s) {
  QubitRegister reg(4);
  reg.amplitudes().setZero();
  for (int i = 0; i < 4; ++i) reg.amplitudes()[i] = s[i];
  return reg;
}

PairState read_pair(const QubitRegister& reg) {
  PairState s;
  for (int i = 0; i < 4; ++i) s[i] = reg.amplitudes()[i];
  return s;
}

}  // namespace

TeleportResult teleported_cnot(const PairState& state, BellPairPool& pool, Rng& rng) {
  QubitRegister reg = load_pair(state);
  TeleportResult r;
  r.record = teleported_cnot(reg, 1, 0, 2, 3, pool, rng);
  r.state = read_pair(reg);
  return r;
}

TeleportVerification verify_teleported_cnot() {
  TeleportVerification v;
  const std::vector<Eigen::Vector2cd> singles = {
      Eigen::Vector2cd(1.0, 0.0), Eigen::Vector2cd(0.0, 1.0),
      Eigen::Vector2cd(kInvSqrt2, kInvSqrt2), Eigen::Vector2cd(kInvSqrt2, C(0.0, kInvSqrt2))};
  for (const auto& a : singles) {
    for (const auto& b : singles) {
      PairState in;
      in << a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1];
      const PairState want = cnot_pair(in);
      for (int m1 = 0; m1 < 2; ++m1) {
        for (int m2 = 0; m2 < 2; ++m2) {
          BellPairPool pool(1);
          QubitRegister reg = load_pair(in);
          const auto rec = teleported_cnot_branch(reg, 1, 0, 2, 3, pool, m1, m2);
          PairState got = read_pair(reg);
          const double norm = got.norm();
          if (norm > 0.0) got /= norm;
          v.max_product_deviation =
              std::max(v.max_product_deviation, phase_distance(got, want));
          v.max_branch_probability_error =
              std::max(v.max_branch_probability_error, std::abs(rec.probability - 0.25));
          v.pairs_per_run = pool.consumed();
        }
      }
    }
  }
  // Choi state: data qubits 1, 0 maximally entangled with references 4, 5.
  for (int m1 = 0; m1 < 2; ++m1) {
    for (int m2 = 0; m2 < 2; ++m2) {
      QubitRegister reg(6);
      reg.h(4);
      reg.cnot(4, 1);
      reg.h(5);
      reg.cnot(5, 0);
      QubitRegister ref = reg;
      BellPairPool pool(1);
      teleported_cnot_branch(reg, 1, 0, 2, 3, pool, m1, m2);
      reg.normalize();
      ref.cnot(1, 0);
      v.max_choi_deviation =
          std::max(v.max_choi_deviation, phase_distance(reg.amplitudes(), ref.amplitudes()));
    }
  }
  return v;
}

ResourceBudget resource_budget(int n, int K, int M) {
  if (n < 1 || K < 1 || M < 1) throw std::invalid_argument("n, K and M must be positive");
  ResourceBudget b;
  b.n = n;
  b.K = K;
  b.M = M;
  b.Mbar = memory_bits_for(M);
  b.dimension = static_cast<long>(n) * K;
  const long D = b.dimension;
  b.memory_qubits = 2L * K * b.Mbar;
  b.decode_bell_pairs = static_cast<long>(K) * b.Mbar;
  b.mzis = D * (D - 1) / 2;
  b.beamsplitters = D * (D - 1);
  b.teleport_bell_pairs = 2 * D * (D - 1);
  b.phase_shifters = D * (D - 1);
  b.ghz_states = n > 2 ? static_cast<long>(K) * b.Mbar : 0;
  b.ghz_size = n > 2 ? n : 0;
  return b;
}

std::string VerificationReport::text() const {
  std::ostringstream os;
  os << "single-photon sector: max |T_ij - U_ij| = " << num(single_excitation_deviation)
     << ", Frobenius = " << num(single_excitation_frobenius) << '\n';
  os << "gadget one-excitation block vs [[1,1],[1,-1]]/sqrt2 in basis (|01>,|10>) = "
        "(mode i, mode i+1): max deviation "
     << num(gadget_block_deviation) << " over " << gadgets << " gadgets\n";
  os << "vacuum sector: gadget maps |00> to";
  const char* labels[] = {"|00>", "|01>", "|10>", "|11>"};
  for (int k = 0; k < 4; ++k) {
    os << ' ' << (k ? "+ " : "") << '(' << num(gadget_vacuum_output[k].real())
       << (gadget_vacuum_output[k].imag() < 0 ? " - " : " + ")
       << num(std::abs(gadget_vacuum_output[k].imag())) << "i)" << labels[k];
  }
  os << "; || G|00> - |00> || = " << num(vacuum_sector_discrepancy)
     << (vacuum_sector_discrepancy > 1e-9 ? " (gadget is NOT the identity on vacuum)" : "")
     << '\n';
  os << "full register (every mode a single-rail qubit): max weight outside one excitation = ";
  if (full_register_leakage < 0.0) {
    os << "not computed (dimension too large)\n";
  } else {
    os << num(full_register_leakage) << '\n';
  }
  os << "teleported-CNOT Bell pairs consumed: " << bell_pairs_consumed << '\n';
  os << "GHZ-based decoding for n > 2 sites: resource-counted only, not simulated\n";
  return os.str();
}

CompileResult compile_nonlocal(const Matrix& U, int n, int K, int M, std::uint64_t seed) {
  if (n < 1 || K < 1) throw std::invalid_argument("n and K must be positive");
  if (U.rows() != U.cols() || U.rows() != static_cast<Eigen::Index>(n) * K) {
    throw std::invalid_argument("dimension mismatch: unitary is " + std::to_string(U.rows()) +
                                "x" + std::to_string(U.cols()) + " but n*K = " +
                                std::to_string(n * K));
  }
  CompileResult out;
  out.mesh = clements_decompose(U);
  out.budget = resource_budget(n, K, M);
  const int D = out.mesh.dimension;
  VerificationReport& rep = out.report;

  BellPairPool pool(static_cast<std::size_t>(out.budget.teleport_bell_pairs));
  Rng rng(derive_seed(seed, 0));
  const Eigen::Matrix2cd B = (Eigen::Matrix2cd() << kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2)
                                 .finished();

  // Each gadget instance is run once on data qubits entangled with two
  // reference qubits; its 4x4 action is read off the resulting Choi state.
  auto run_gadget = [&]() {
    QubitRegister reg(8);
    reg.h(4);
    reg.cnot(4, 1);
    reg.h(5);
    reg.cnot(5, 0);
    teleported_cnot(reg, 1, 0, 2, 3, pool, rng);
    reg.h(1);
    teleported_cnot(reg, 1, 0, 6, 7, pool, rng);
    Eigen::Matrix4cd G;
    for (int in = 0; in < 4; ++in) {
      const int ref = ((in >> 1) & 1) << 4 | (in & 1) << 5;
      for (int o = 0; o < 4; ++o) G(o, in) = 2.0 * reg.amplitudes()[ref | o];
    }
    return G;
  };

  std::vector<Eigen::Matrix4cd> gadgets;
  Matrix T = Matrix::Identity(D, D);
  for (const auto& z : out.mesh.mzis) {
    const Eigen::Matrix4cd G1 = run_gadget();
    const Eigen::Matrix4cd G2 = run_gadget();
    Eigen::Matrix2cd b1, b2;
    b1 << G1(1, 1), G1(1, 2), G1(2, 1), G1(2, 2);
    b2 << G2(1, 1), G2(1, 2), G2(2, 1), G2(2, 2);
    rep.gadget_block_deviation = std::max(
        {rep.gadget_block_deviation, (b1 - B).cwiseAbs().maxCoeff(), (b2 - B).cwiseAbs().maxCoeff()});
    const Eigen::Matrix2cd P_theta = Eigen::Vector2cd(std::polar(1.0, z.theta), 1.0).asDiagonal();
    const Eigen::Matrix2cd P_phi = Eigen::Vector2cd(std::polar(1.0, z.phi), 1.0).asDiagonal();
    apply_left(T, z.mode, b2 * P_theta * b1 * P_phi);
    gadgets.push_back(G1);
    gadgets.push_back(G2);
  }
  for (int i = 0; i < D; ++i) T.row(i) *= std::polar(1.0, out.mesh.output_phases[i]);
  rep.single_excitation_deviation = (T - U).cwiseAbs().maxCoeff();
  rep.single_excitation_frobenius = (T - U).norm();
  rep.gadgets = gadgets.size();
  rep.bell_pairs_consumed = pool.consumed();

  const Eigen::Matrix4cd G0 = gadgets.empty() ? bs_gadget_matrix() : gadgets.front();
  rep.gadget_vacuum_output = G0.col(0);
  rep.vacuum_sector_discrepancy = (rep.gadget_vacuum_output - PairState(1.0, 0.0, 0.0, 0.0)).norm();

  if (D <= 16) {
    for (int k = 0; k < D; ++k) {
      QubitRegister reg(D);
      reg.x(k);
      std::size_t g = 0;
      for (const auto& z : out.mesh.mzis) {
        reg.phase(z.mode, z.phi);
        apply_two_qubit(reg, z.mode + 1, z.mode, gadgets[g++]);
        reg.phase(z.mode, z.theta);
        apply_two_qubit(reg, z.mode + 1, z.mode, gadgets[g++]);
      }
      double inside = 0.0;
      for (int i = 0; i < D; ++i) inside += std::norm(reg.amplitudes()[Eigen::Index{1} << i]);
      rep.full_register_leakage = std::max(rep.full_register_leakage, 1.0 - inside);
    }
  } else {
    rep.full_register_leakage = -1.0;
  }
  return out;
}

RoundTripSummary random_round_trips(const std::vector<int>& dims, std::size_t count,
                                    std::uint64_t seed, Execution exec) {
  if (dims.empty()) throw std::invalid_argument("no dimensions given");
  std::vector<double> err(count, 0.0);
  std::vector<char> exact(count, 1);
  auto body = [&](std::size_t u) {
    const int D = dims[u % dims.size()];
    Rng rng = make_stream(seed, u);
    const Matrix U = random_unitary(D, rng);
    const MziMesh mesh = clements_decompose(U);
    err[u] = frobenius_distance(recompose(mesh), U);
    exact[u] = static_cast<long>(mesh.mzis.size()) == static_cast<long>(D) * (D - 1) / 2;
  };
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (long u = 0; u < static_cast<long>(count); ++u) body(static_cast<std::size_t>(u));
  } else {
    for (std::size_t u = 0; u < count; ++u) body(u);
  }
  RoundTripSummary s;
  s.unitaries = count;
  for (std::size_t u = 0; u < count; ++u) {
    s.max_error = std::max(s.max_error, err[u]);
    s.counts_exact = s.counts_exact && exact[u];
  }
  return s;
}

}  // namespace ebl
