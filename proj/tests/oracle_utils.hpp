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

// Test-only oracles: everything here is built from explicit 2x2 matrices and
// Kronecker products, independent of the bit-twiddling implementation paths
// it is used to check.

#ifndef ABQC_TESTS_ORACLE_UTILS_HPP
#define ABQC_TESTS_ORACLE_UTILS_HPP

#include <Eigen/Dense>
#include <complex>

#include "abqc/graph.hpp"
#include "abqc/pauli.hpp"

namespace oracle {

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using Cx = std::complex<double>;

inline CMat pauli_matrix_1q(abqc::Pauli p) {
  CMat m(2, 2);
  switch (p) {
    case abqc::Pauli::I:
      m << 1, 0, 0, 1;
      break;
    case abqc::Pauli::X:
      m << 0, 1, 1, 0;
      break;
    case abqc::Pauli::Y:
      m << 0, Cx(0, -1), Cx(0, 1), 0;
      break;
    case abqc::Pauli::Z:
      m << 1, 0, 0, -1;
      break;
  }
  return m;
}

inline CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

/// Dense matrix of a signed Pauli string. Qubit 0 is the most significant
/// subsystem, matching the library's basis convention.
inline CMat matrix_of(const abqc::PauliString& p) {
  CMat m = CMat::Identity(1, 1);
  for (size_t q = 0; q < p.size(); ++q) {
    m = kron(m, pauli_matrix_1q(p.letter(q)));
  }
  return p.phase() * m;
}

inline CMat identity(int n) {
  Eigen::Index d = Eigen::Index{1} << n;
  return CMat::Identity(d, d);
}

/// |+>^n built by explicit Kronecker products.
inline CVec plus_state(int n) {
  CVec plus(2);
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  CVec v = CVec::Ones(1);
  for (int q = 0; q < n; ++q) {
    CVec next(v.size() * 2);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      next(2 * i) = v(i) * plus(0);
      next(2 * i + 1) = v(i) * plus(1);
    }
    v = next;
  }
  return v;
}

/// Full 2^n CZ matrix between two qubits: diagonal, -1 when both bits set.
inline CMat cz_matrix(int n, int u, int v) {
  Eigen::Index d = Eigen::Index{1} << n;
  CMat m = CMat::Zero(d, d);
  for (Eigen::Index b = 0; b < d; ++b) {
    int bu = static_cast<int>((b >> (n - 1 - u)) & 1);
    int bv = static_cast<int>((b >> (n - 1 - v)) & 1);
    m(b, b) = (bu && bv) ? -1.0 : 1.0;
  }
  return m;
}

/// |G> built the textbook way: apply each edge's CZ matrix to |+>^n.
inline CVec graph_state_by_cz(const abqc::Graph& g) {
  CVec v = plus_state(g.vertex_count());
  for (auto [u, w] : g.edges()) {
    v = cz_matrix(g.vertex_count(), u, w) * v;
  }
  return v;
}

inline CMat identity_like(const CMat& p) { return CMat::Identity(p.rows(), p.cols()); }

inline CMat projector_plus(const CMat& p) { return 0.5 * (identity_like(p) + p); }

}  // namespace oracle

#endif  // ABQC_TESTS_ORACLE_UTILS_HPP
