// Copyright 2026 The abqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Exact small-register state representations. Basis-state indexing puts
// qubit 0 in the most significant bit: |q0 q1 ... q_{n-1}>.

#ifndef ABQC_DENSE_HPP
#define ABQC_DENSE_HPP

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "abqc/graph.hpp"
#include "abqc/measure.hpp"
#include "abqc/pauli.hpp"
#include "abqc/rng.hpp"

namespace abqc {

using Complex = std::complex<double>;

constexpr int kDefaultQubitCap = 12;  // largest dense register: 2^12 amplitudes

namespace detail {

/// Bit of qubit q in basis index `idx` (qubit 0 is the most significant).
inline int qubit_bit(uint64_t idx, int n, int q) { return static_cast<int>((idx >> (n - 1 - q)) & 1ULL); }

/// Decomposition of a Pauli string action on basis states:
/// P |j> = base * (-1)^{popcount(j & zmask)} |j ^ xmask>.
struct PauliAction {
  uint64_t xmask = 0;
  uint64_t zmask = 0;
  Complex base{1, 0};

  PauliAction(const PauliString& p, int n) {
    if (static_cast<int>(p.size()) != n) {
      throw std::invalid_argument("PauliString length does not match register size");
    }
    int y_count = 0;
    for (int q = 0; q < n; ++q) {
      uint64_t bit = 1ULL << (n - 1 - q);
      if (p.x_bit(q)) {
        xmask |= bit;
      }
      if (p.z_bit(q)) {
        zmask |= bit;
      }
      y_count += (p.letter(q) == Pauli::Y);
    }
    static const Complex i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    base = p.phase() * i_pow[y_count % 4];
  }

  Complex coeff(uint64_t j) const {
    return (__builtin_popcountll(j & zmask) & 1) ? -base : base;
  }
};

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int64_t r = 0; r < a.rows(); ++r) {
    for (int64_t c = 0; c < a.cols(); ++c) {
      out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
    }
  }
  return out;
}

}  // namespace detail

class PureState {
 public:
  PureState(int n, Eigen::VectorXcd amplitudes) : n_(n), amp_(std::move(amplitudes)) {
    if (n < 1 || amp_.size() != (int64_t{1} << n)) {
      throw std::invalid_argument("PureState: amplitude count must be 2^n");
    }
  }

  static PureState basis(int n, uint64_t index) {
    Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(int64_t{1} << n);
    amp(static_cast<int64_t>(index)) = 1.0;
    return PureState(n, std::move(amp));
  }

  int qubit_count() const { return n_; }
  int64_t dim() const { return amp_.size(); }
  const Eigen::VectorXcd& amplitudes() const { return amp_; }
  Eigen::VectorXcd& amplitudes() { return amp_; }
  Complex amplitude(uint64_t idx) const { return amp_(static_cast<int64_t>(idx)); }

  double norm_sq() const { return amp_.squaredNorm(); }
  bool is_normalized(double tol = kAlgebraTol) const { return std::abs(norm_sq() - 1.0) <= tol; }

 private:
  int n_;
  Eigen::VectorXcd amp_;
};

class DensityState {
 public:
  DensityState(int n, Eigen::MatrixXcd matrix) : n_(n), m_(std::move(matrix)) {
    int64_t d = int64_t{1} << n;
    if (n < 1 || m_.rows() != d || m_.cols() != d) {
      throw std::invalid_argument("DensityState: matrix must be 2^n x 2^n");
    }
  }

  int qubit_count() const { return n_; }
  int64_t dim() const { return m_.rows(); }
  const Eigen::MatrixXcd& matrix() const { return m_; }
  Eigen::MatrixXcd& matrix() { return m_; }

  double trace_real() const { return m_.trace().real(); }

  /// Hermitian within 1e-10, unit trace within 1e-10, eigenvalues >= -1e-9.
  bool is_valid(double herm_tol = kAlgebraTol, double pos_tol = kPositivityTol) const {
    if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > herm_tol) {
      return false;
    }
    if (std::abs(m_.trace() - Complex(1, 0)) > herm_tol) {
      return false;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff() >= -pos_tol;
  }

 private:
  int n_;
  Eigen::MatrixXcd m_;
};

inline DensityState density_from_pure(const PureState& psi) {
  return DensityState(psi.qubit_count(), psi.amplitudes() * psi.amplitudes().adjoint());
}

/// Amplitudes of |G> = (prod_{(i,j) in E} CZ_ij) |+>^n: the amplitude of
/// bitstring b is (-1)^{#edges inside b} / sqrt(2^n).
inline Eigen::VectorXcd graph_state_vector(const Graph& g) {
  int n = g.vertex_count();
  int64_t d = int64_t{1} << n;
  double scale = 1.0 / std::sqrt(static_cast<double>(d));
  Eigen::VectorXcd amp(d);
  for (int64_t b = 0; b < d; ++b) {
    int sign = 0;
    for (auto [u, v] : g.edges()) {
      sign ^= detail::qubit_bit(static_cast<uint64_t>(b), n, u) & detail::qubit_bit(static_cast<uint64_t>(b), n, v);
    }
    amp(b) = sign ? -scale : scale;
  }
  return amp;
}

inline PureState make_graph_state(const Graph& g) {
  return PureState(g.vertex_count(), graph_state_vector(g));
}

inline Eigen::VectorXcd apply_pauli(const PauliString& p, const Eigen::VectorXcd& v, int n) {
  detail::PauliAction act(p, n);
  Eigen::VectorXcd out(v.size());
  for (int64_t r = 0; r < v.size(); ++r) {
    uint64_t src = static_cast<uint64_t>(r) ^ act.xmask;
    out(r) = act.coeff(src) * v(static_cast<int64_t>(src));
  }
  return out;
}

/// Applies the (unitary) Pauli string to the state vector.
inline void apply_pauli_inplace(PureState& state, const PauliString& p) {
  state.amplitudes() = apply_pauli(p, state.amplitudes(), state.qubit_count());
}

inline double expectation(const PureState& state, const PauliString& p) {
  if (!p.has_real_phase()) {
    throw std::invalid_argument("expectation: observable must have real phase");
  }
  Eigen::VectorXcd pv = apply_pauli(p, state.amplitudes(), state.qubit_count());
  return state.amplitudes().dot(pv).real();
}

inline double expectation(const DensityState& state, const PauliString& p) {
  if (!p.has_real_phase()) {
    throw std::invalid_argument("expectation: observable must have real phase");
  }
  detail::PauliAction act(p, state.qubit_count());
  // Tr(P rho) = sum_k coeff(k) rho[k, k^x]
  Complex tr = 0;
  const auto& m = state.matrix();
  for (int64_t k = 0; k < m.rows(); ++k) {
    tr += act.coeff(static_cast<uint64_t>(k)) * m(k, static_cast<int64_t>(static_cast<uint64_t>(k) ^ act.xmask));
  }
  return tr.real();
}

/// Projective measurement of a Hermitian Pauli. Outcome +1 has Born
/// probability (1 + <P>)/2; the state is replaced by the projected,
/// renormalized branch. Deterministic branches consume no randomness.
/// `force` (+1/-1) projects onto that branch instead of sampling.
inline MeasureResult measure_pauli(PureState& state, const PauliString& p, Rng& rng, int force = 0) {
  if (!p.has_real_phase()) {
    throw std::invalid_argument("measure_pauli: observable must be Hermitian (real phase)");
  }
  Eigen::VectorXcd pv = apply_pauli(p, state.amplitudes(), state.qubit_count());
  double exp_val = state.amplitudes().dot(pv).real();
  double prob_plus = std::clamp(0.5 * (1.0 + exp_val), 0.0, 1.0);

  MeasureResult result;
  result.prob_plus = prob_plus;
  result.outcome = detail::resolve_outcome(prob_plus, rng, force, &result.deterministic);

  double branch_prob = result.outcome == +1 ? prob_plus : 1.0 - prob_plus;
  double s = result.outcome == +1 ? 0.5 : -0.5;
  state.amplitudes() = (0.5 * state.amplitudes() + s * pv) / std::sqrt(branch_prob);
  return result;
}

inline MeasureResult measure_pauli(DensityState& state, const PauliString& p, Rng& rng, int force = 0) {
  if (!p.has_real_phase()) {
    throw std::invalid_argument("measure_pauli: observable must be Hermitian (real phase)");
  }
  int n = state.qubit_count();
  detail::PauliAction act(p, n);
  Eigen::MatrixXcd& m = state.matrix();
  int64_t d = m.rows();

  Complex tr = 0;
  for (int64_t k = 0; k < d; ++k) {
    tr += act.coeff(static_cast<uint64_t>(k)) * m(k, static_cast<int64_t>(static_cast<uint64_t>(k) ^ act.xmask));
  }
  double prob_plus = std::clamp(0.5 * (1.0 + tr.real()), 0.0, 1.0);

  MeasureResult result;
  result.prob_plus = prob_plus;
  result.outcome = detail::resolve_outcome(prob_plus, rng, force, &result.deterministic);

  // Pi rho Pi with Pi = (I + o P)/2, assembled from row/column Pauli actions.
  Eigen::MatrixXcd p_rho(d, d), rho_p(d, d);
  for (int64_t r = 0; r < d; ++r) {
    uint64_t src = static_cast<uint64_t>(r) ^ act.xmask;
    p_rho.row(r) = act.coeff(src) * m.row(static_cast<int64_t>(src));
  }
  for (int64_t c = 0; c < d; ++c) {
    rho_p.col(c) = act.coeff(static_cast<uint64_t>(c)) * m.col(static_cast<int64_t>(static_cast<uint64_t>(c) ^ act.xmask));
  }
  Eigen::MatrixXcd p_rho_p(d, d);
  for (int64_t c = 0; c < d; ++c) {
    p_rho_p.col(c) = act.coeff(static_cast<uint64_t>(c)) * p_rho.col(static_cast<int64_t>(static_cast<uint64_t>(c) ^ act.xmask));
  }

  double o = result.outcome;
  double branch_prob = result.outcome == +1 ? prob_plus : 1.0 - prob_plus;
  m = (m + o * p_rho + o * rho_p + p_rho_p) / (4.0 * branch_prob);
  m = 0.5 * (m + m.adjoint().eval());
  return result;
}

inline double fidelity_with_graph(const PureState& state, const Graph& g) {
  if (state.qubit_count() != g.vertex_count()) {
    throw std::invalid_argument("fidelity_with_graph: dimension mismatch");
  }
  Eigen::VectorXcd gv = graph_state_vector(g);
  return std::norm(gv.dot(state.amplitudes()));
}

inline double fidelity_with_graph(const DensityState& state, const Graph& g) {
  if (state.qubit_count() != g.vertex_count()) {
    throw std::invalid_argument("fidelity_with_graph: dimension mismatch");
  }
  Eigen::VectorXcd gv = graph_state_vector(g);
  return gv.dot(state.matrix() * gv).real();
}

inline DensityState tensor_power(const DensityState& state, int t, int qubit_cap = kDefaultQubitCap) {
  if (t < 1) {
    throw std::invalid_argument("tensor_power: power must be >= 1");
  }
  int total = state.qubit_count() * t;
  if (total > qubit_cap) {
    throw std::invalid_argument("tensor_power: result exceeds the dense qubit cap");
  }
  Eigen::MatrixXcd out = state.matrix();
  for (int i = 1; i < t; ++i) {
    out = detail::kron(out, state.matrix());
  }
  return DensityState(total, std::move(out));
}

inline DensityState maximally_mixed(int n) {
  int64_t d = int64_t{1} << n;
  return DensityState(n, Eigen::MatrixXcd::Identity(d, d) / static_cast<double>(d));
}

/// lambda |G><G| + (1 - lambda) I/2^n with lambda solving
/// <G|.|G> = target_fidelity, i.e. lambda = (F - 2^-n)/(1 - 2^-n).
inline DensityState depolarized_graph_state(const Graph& g, double target_fidelity) {
  int n = g.vertex_count();
  double floor_f = 1.0 / static_cast<double>(int64_t{1} << n);
  if (target_fidelity < floor_f - kAlgebraTol || target_fidelity > 1.0 + kAlgebraTol) {
    throw std::invalid_argument("depolarized_graph_state: target fidelity out of range");
  }
  double lambda = (target_fidelity - floor_f) / (1.0 - floor_f);
  lambda = std::clamp(lambda, 0.0, 1.0);
  Eigen::VectorXcd gv = graph_state_vector(g);
  int64_t d = int64_t{1} << n;
  Eigen::MatrixXcd m = lambda * (gv * gv.adjoint());
  m += ((1.0 - lambda) / static_cast<double>(d)) * Eigen::MatrixXcd::Identity(d, d);
  return DensityState(n, std::move(m));
}

/// Haar-random pure state: normalized vector of iid complex Gaussians.
inline PureState random_pure_state(int n, Rng& rng) {
  int64_t d = int64_t{1} << n;
  Eigen::VectorXcd amp(d);
  for (int64_t i = 0; i < d; ++i) {
    amp(i) = Complex(rng.normal(), rng.normal());
  }
  amp /= amp.norm();
  return PureState(n, std::move(amp));
}

/// Random density operator for verification sweeps: lambda |psi><psi| +
/// (1 - lambda) I/2^n with Haar-random |psi| and uniform lambda, which covers
/// the whole graph-fidelity range with valid states.
inline DensityState random_density(int n, Rng& rng) {
  double lambda = rng.real01();
  PureState psi = random_pure_state(n, rng);
  int64_t d = int64_t{1} << n;
  Eigen::MatrixXcd m = lambda * (psi.amplitudes() * psi.amplitudes().adjoint());
  m += ((1.0 - lambda) / static_cast<double>(d)) * Eigen::MatrixXcd::Identity(d, d);
  return DensityState(n, std::move(m));
}

/// Traces out the listed qubits (positions use the qubit-0-most-significant
/// convention); remaining qubits keep their relative order.
inline DensityState partial_trace(const DensityState& state, const std::vector<int>& traced) {
  int n = state.qubit_count();
  std::vector<bool> is_traced(static_cast<size_t>(n), false);
  for (int q : traced) {
    if (q < 0 || q >= n) {
      throw std::out_of_range("partial_trace: qubit out of range");
    }
    if (is_traced[static_cast<size_t>(q)]) {
      throw std::invalid_argument("partial_trace: duplicate qubit");
    }
    is_traced[static_cast<size_t>(q)] = true;
  }
  int kept = n - static_cast<int>(traced.size());
  if (kept < 1) {
    throw std::invalid_argument("partial_trace: at least one qubit must remain");
  }

  // Bit masks (in full-index bit positions) for kept and traced qubits,
  // ordered most significant first.
  std::vector<uint64_t> kept_bits, traced_bits;
  for (int q = 0; q < n; ++q) {
    uint64_t bit = 1ULL << (n - 1 - q);
    (is_traced[static_cast<size_t>(q)] ? traced_bits : kept_bits).push_back(bit);
  }

  auto scatter = [](uint64_t compact, const std::vector<uint64_t>& bits) {
    uint64_t full = 0;
    for (size_t i = 0; i < bits.size(); ++i) {
      if ((compact >> (bits.size() - 1 - i)) & 1ULL) {
        full |= bits[i];
      }
    }
    return full;
  };

  int64_t kd = int64_t{1} << kept;
  int64_t td = int64_t{1} << traced.size();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(kd, kd);
  std::vector<uint64_t> kept_full(static_cast<size_t>(kd));
  for (int64_t a = 0; a < kd; ++a) {
    kept_full[static_cast<size_t>(a)] = scatter(static_cast<uint64_t>(a), kept_bits);
  }
  for (int64_t t = 0; t < td; ++t) {
    uint64_t tf = scatter(static_cast<uint64_t>(t), traced_bits);
    for (int64_t a = 0; a < kd; ++a) {
      int64_t row = static_cast<int64_t>(kept_full[static_cast<size_t>(a)] | tf);
      for (int64_t b = 0; b < kd; ++b) {
        out(a, b) += state.matrix()(row, static_cast<int64_t>(kept_full[static_cast<size_t>(b)] | tf));
      }
    }
  }
  return DensityState(kept, std::move(out));
}

/// Applies the diagonal phase diag(1, e^{-i theta}) to one qubit. Conjugating
/// an X measurement by this rotation measures cos(theta) X + sin(theta) Y.
inline void apply_phase_diag(PureState& state, int qubit, double theta) {
  int n = state.qubit_count();
  if (qubit < 0 || qubit >= n) {
    throw std::out_of_range("apply_phase_diag: qubit out of range");
  }
  Complex w = std::exp(Complex(0, -theta));
  uint64_t bit = 1ULL << (n - 1 - qubit);
  for (int64_t j = 0; j < state.dim(); ++j) {
    if (static_cast<uint64_t>(j) & bit) {
      state.amplitudes()(j) *= w;
    }
  }
}

inline void apply_phase_diag(DensityState& state, int qubit, double theta) {
  int n = state.qubit_count();
  if (qubit < 0 || qubit >= n) {
    throw std::out_of_range("apply_phase_diag: qubit out of range");
  }
  Complex w = std::exp(Complex(0, -theta));
  uint64_t bit = 1ULL << (n - 1 - qubit);
  auto& m = state.matrix();
  for (int64_t r = 0; r < m.rows(); ++r) {
    for (int64_t c = 0; c < m.cols(); ++c) {
      bool rb = static_cast<uint64_t>(r) & bit;
      bool cb = static_cast<uint64_t>(c) & bit;
      if (rb && !cb) {
        m(r, c) *= w;
      } else if (!rb && cb) {
        m(r, c) *= std::conj(w);
      }
    }
  }
}

}  // namespace abqc

#endif  // ABQC_DENSE_HPP
