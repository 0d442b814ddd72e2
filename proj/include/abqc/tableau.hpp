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

#ifndef ABQC_TABLEAU_HPP
#define ABQC_TABLEAU_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "abqc/graph.hpp"
#include "abqc/measure.hpp"
#include "abqc/pauli.hpp"
#include "abqc/rng.hpp"

namespace abqc {

namespace detail {

/// Packs a Pauli string's x/z bits into words: bit j is x_j, bit n+j is z_j.
inline std::vector<uint64_t> symplectic_bits(const PauliString& p) {
  size_t n = p.size();
  std::vector<uint64_t> bits((2 * n + 63) / 64, 0);
  for (size_t j = 0; j < n; ++j) {
    if (p.x_bit(j)) {
      bits[j / 64] |= 1ULL << (j % 64);
    }
    if (p.z_bit(j)) {
      bits[(n + j) / 64] |= 1ULL << ((n + j) % 64);
    }
  }
  return bits;
}

inline bool get_bit(const std::vector<uint64_t>& bits, size_t i) { return (bits[i / 64] >> (i % 64)) & 1ULL; }

inline void xor_into(std::vector<uint64_t>& dst, const std::vector<uint64_t>& src) {
  for (size_t w = 0; w < dst.size(); ++w) {
    dst[w] ^= src[w];
  }
}

inline bool all_zero(const std::vector<uint64_t>& bits) {
  for (uint64_t w : bits) {
    if (w) {
      return false;
    }
  }
  return true;
}

}  // namespace detail

/// Stabilizer-state representation: n independent, pairwise-commuting
/// generator rows with phases +/-1. Supports graph-state preparation and
/// Pauli measurement; arbitrary (non-stabilizer) states are out of scope.
class StabilizerTableau {
 public:
  explicit StabilizerTableau(std::vector<PauliString> rows) : rows_(std::move(rows)) {
    if (rows_.empty()) {
      throw std::invalid_argument("StabilizerTableau: need at least one row");
    }
    n_ = static_cast<int>(rows_[0].size());
    if (rows_.size() != static_cast<size_t>(n_)) {
      throw std::invalid_argument("StabilizerTableau: need exactly n rows for n qubits");
    }
    for (const auto& r : rows_) {
      if (static_cast<int>(r.size()) != n_ || !r.has_real_phase()) {
        throw std::invalid_argument("StabilizerTableau: rows must be length-n with +/-1 phase");
      }
    }
  }

  static StabilizerTableau from_graph(const Graph& g) {
    std::vector<PauliString> rows;
    rows.reserve(static_cast<size_t>(g.vertex_count()));
    for (int i = 0; i < g.vertex_count(); ++i) {
      rows.push_back(graph_stabilizer_generator(g, i));
    }
    return StabilizerTableau(std::move(rows));
  }

  int qubit_count() const { return n_; }
  const PauliString& row(size_t i) const { return rows_.at(i); }
  const std::vector<PauliString>& rows() const { return rows_; }

  void flip_row_sign(size_t i) { rows_.at(i).negate(); }

  /// Sign with which `p` appears in the stabilizer group (+1 if +p is
  /// generated, -1 if -p is), or nullopt if neither. GF(2) elimination on
  /// the symplectic bit vectors plus phase accumulation on the hit subset.
  std::optional<int> group_sign(const PauliString& p) const {
    if (static_cast<int>(p.size()) != n_) {
      throw std::invalid_argument("group_sign: length mismatch");
    }
    if (!p.has_real_phase()) {
      throw std::invalid_argument("group_sign: phase must be +/-1");
    }
    size_t cols = 2 * static_cast<size_t>(n_);
    size_t combo_words = (rows_.size() + 63) / 64;
    std::vector<std::vector<uint64_t>> work;
    std::vector<std::vector<uint64_t>> combos;
    work.reserve(rows_.size());
    combos.reserve(rows_.size());
    for (size_t i = 0; i < rows_.size(); ++i) {
      work.push_back(detail::symplectic_bits(rows_[i]));
      std::vector<uint64_t> c(combo_words, 0);
      c[i / 64] = 1ULL << (i % 64);
      combos.push_back(std::move(c));
    }

    std::vector<uint64_t> target = detail::symplectic_bits(p);
    std::vector<uint64_t> target_combo(combo_words, 0);
    size_t rank = 0;
    for (size_t c = 0; c < cols && rank < work.size(); ++c) {
      size_t pivot = rank;
      while (pivot < work.size() && !detail::get_bit(work[pivot], c)) {
        ++pivot;
      }
      if (pivot == work.size()) {
        continue;
      }
      std::swap(work[pivot], work[rank]);
      std::swap(combos[pivot], combos[rank]);
      for (size_t r = 0; r < work.size(); ++r) {
        if (r != rank && detail::get_bit(work[r], c)) {
          detail::xor_into(work[r], work[rank]);
          detail::xor_into(combos[r], combos[rank]);
        }
      }
      if (detail::get_bit(target, c)) {
        detail::xor_into(target, work[rank]);
        detail::xor_into(target_combo, combos[rank]);
      }
      ++rank;
    }
    if (!detail::all_zero(target)) {
      return std::nullopt;
    }

    PauliString product = PauliString::identity(static_cast<size_t>(n_));
    for (size_t i = 0; i < rows_.size(); ++i) {
      if (detail::get_bit(target_combo, i)) {
        product = product * rows_[i];
      }
    }
    // Letters now match p's by construction; only the signs can differ.
    return product.sign() == p.sign() ? +1 : -1;
  }

  /// Born probability of the +1 outcome: 1 or 0 when p is (anti-)stabilized,
  /// 1/2 otherwise.
  double prob_plus(const PauliString& p) const {
    auto s = group_sign(p);
    if (!s.has_value()) {
      return 0.5;
    }
    return *s == +1 ? 1.0 : 0.0;
  }

  /// Measures a Hermitian Pauli. Stabilized observables give deterministic
  /// outcomes and leave the tableau unchanged; anticommuting observables give
  /// a uniform outcome and trigger the standard row-replacement update.
  /// Deterministic outcomes consume no randomness.
  MeasureResult measure(const PauliString& p, Rng* rng, int force = 0) {
    if (static_cast<int>(p.size()) != n_) {
      throw std::invalid_argument("measure: length mismatch");
    }
    if (!p.has_real_phase()) {
      throw std::invalid_argument("measure: observable must be Hermitian (real phase)");
    }
    std::vector<size_t> anti;
    for (size_t i = 0; i < rows_.size(); ++i) {
      if (!rows_[i].commutes_with(p)) {
        anti.push_back(i);
      }
    }
    MeasureResult result;
    if (anti.empty()) {
      auto s = group_sign(p);
      if (!s.has_value()) {
        throw std::logic_error("measure: commuting Pauli missing from a maximal stabilizer group");
      }
      if (force != 0 && force != *s) {
        throw std::logic_error("measure_pauli: forced branch has zero probability");
      }
      result.outcome = *s;
      result.prob_plus = *s == +1 ? 1.0 : 0.0;
      result.deterministic = true;
      return result;
    }

    int outcome;
    if (force != 0) {
      outcome = force;
    } else {
      if (rng == nullptr) {
        throw std::logic_error("measure: random outcome requires an rng");
      }
      outcome = rng->coin() ? +1 : -1;
    }
    size_t a = anti[0];
    for (size_t j = 1; j < anti.size(); ++j) {
      rows_[anti[j]] = rows_[a] * rows_[anti[j]];
    }
    rows_[a] = p;
    if (outcome == -1) {
      rows_[a].negate();
    }
    result.outcome = outcome;
    result.prob_plus = 0.5;
    result.deterministic = false;
    return result;
  }

  /// Exact <G|rho|G> for the tableau's state: the probability that projecting
  /// each graph generator onto its +1 eigenspace in sequence succeeds.
  double graph_fidelity(const Graph& g) const {
    if (g.vertex_count() != n_) {
      throw std::invalid_argument("graph_fidelity: dimension mismatch");
    }
    StabilizerTableau work = *this;
    double prob = 1.0;
    for (int i = 0; i < n_; ++i) {
      PauliString gi = graph_stabilizer_generator(g, i);
      auto s = work.group_sign(gi);
      if (s.has_value()) {
        if (*s == -1) {
          return 0.0;
        }
        continue;
      }
      prob *= 0.5;
      work.measure(gi, nullptr, +1);
    }
    return prob;
  }

  /// Pairwise commutation and full symplectic rank; used by invariant tests.
  bool invariants_hold() const {
    for (size_t i = 0; i < rows_.size(); ++i) {
      if (!rows_[i].has_real_phase()) {
        return false;
      }
      for (size_t j = i + 1; j < rows_.size(); ++j) {
        if (!rows_[i].commutes_with(rows_[j])) {
          return false;
        }
      }
    }
    std::vector<std::vector<uint64_t>> work;
    for (const auto& r : rows_) {
      work.push_back(detail::symplectic_bits(r));
    }
    size_t cols = 2 * static_cast<size_t>(n_);
    size_t rank = 0;
    for (size_t c = 0; c < cols && rank < work.size(); ++c) {
      size_t pivot = rank;
      while (pivot < work.size() && !detail::get_bit(work[pivot], c)) {
        ++pivot;
      }
      if (pivot == work.size()) {
        continue;
      }
      std::swap(work[pivot], work[rank]);
      for (size_t r = rank + 1; r < work.size(); ++r) {
        if (detail::get_bit(work[r], c)) {
          detail::xor_into(work[r], work[rank]);
        }
      }
      ++rank;
    }
    return rank == rows_.size();
  }

 private:
  int n_;
  std::vector<PauliString> rows_;
};

inline StabilizerTableau tableau_from_graph(const Graph& g) { return StabilizerTableau::from_graph(g); }

inline std::optional<int> in_stabilizer_group(const StabilizerTableau& t, const PauliString& p) {
  return t.group_sign(p);
}

inline MeasureResult measure_pauli(StabilizerTableau& t, const PauliString& p, Rng& rng, int force = 0) {
  return t.measure(p, &rng, force);
}

}  // namespace abqc

#endif  // ABQC_TABLEAU_HPP
