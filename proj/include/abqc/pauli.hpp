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

#ifndef ABQC_PAULI_HPP
#define ABQC_PAULI_HPP

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "abqc/graph.hpp"

namespace abqc {

enum class Pauli : uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

inline char pauli_char(Pauli p) { return "IXYZ"[static_cast<int>(p)]; }

/// A signed n-qubit Pauli operator: phase in {+1, +i, -1, -i} (stored as a
/// power of i) times a tensor product of single-qubit Paulis.
class PauliString {
 public:
  explicit PauliString(size_t n) : phase_pow_(0), letters_(n, Pauli::I) {}

  PauliString(std::vector<Pauli> letters, int phase_pow = 0)
      : phase_pow_(static_cast<uint8_t>(((phase_pow % 4) + 4) % 4)), letters_(std::move(letters)) {}

  static PauliString identity(size_t n) { return PauliString(n); }

  /// Single non-identity letter at `qubit`, identity elsewhere.
  static PauliString single(size_t n, size_t qubit, Pauli p, int sign = +1) {
    PauliString out(n);
    out.set_letter(qubit, p);
    if (sign == -1) {
      out.phase_pow_ = 2;
    } else if (sign != +1) {
      throw std::invalid_argument("PauliString::single: sign must be +1 or -1");
    }
    return out;
  }

  /// Parses strings like "+XZ", "-YY", "+iXI", "-iZ". A leading sign is
  /// required only for negative phases; "XZ" means "+XZ".
  static PauliString from_string(const std::string& text) {
    size_t pos = 0;
    int phase_pow = 0;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      phase_pow = (text[pos] == '-') ? 2 : 0;
      ++pos;
    }
    if (pos < text.size() && text[pos] == 'i') {
      phase_pow += 1;
      ++pos;
    }
    std::vector<Pauli> letters;
    for (; pos < text.size(); ++pos) {
      switch (text[pos]) {
        case 'I': letters.push_back(Pauli::I); break;
        case 'X': letters.push_back(Pauli::X); break;
        case 'Y': letters.push_back(Pauli::Y); break;
        case 'Z': letters.push_back(Pauli::Z); break;
        default: throw std::invalid_argument("PauliString::from_string: bad letter");
      }
    }
    if (letters.empty()) {
      throw std::invalid_argument("PauliString::from_string: empty letter string");
    }
    return PauliString(std::move(letters), phase_pow);
  }

  size_t size() const { return letters_.size(); }

  Pauli letter(size_t i) const { return letters_.at(i); }
  void set_letter(size_t i, Pauli p) { letters_.at(i) = p; }
  const std::vector<Pauli>& letters() const { return letters_; }

  /// Phase as a power of i (0..3).
  int phase_pow() const { return phase_pow_; }

  std::complex<double> phase() const {
    static const std::complex<double> table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return table[phase_pow_];
  }

  bool has_real_phase() const { return phase_pow_ == 0 || phase_pow_ == 2; }

  /// +1 or -1; only meaningful for Hermitian strings.
  int sign() const {
    if (!has_real_phase()) {
      throw std::logic_error("PauliString::sign: phase is imaginary");
    }
    return phase_pow_ == 0 ? +1 : -1;
  }

  void negate() { phase_pow_ = static_cast<uint8_t>((phase_pow_ + 2) % 4); }

  bool is_identity_letters() const {
    for (Pauli p : letters_) {
      if (p != Pauli::I) {
        return false;
      }
    }
    return true;
  }

  size_t weight() const {
    size_t w = 0;
    for (Pauli p : letters_) {
      w += (p != Pauli::I);
    }
    return w;
  }

  bool x_bit(size_t i) const { return letters_[i] == Pauli::X || letters_[i] == Pauli::Y; }
  bool z_bit(size_t i) const { return letters_[i] == Pauli::Z || letters_[i] == Pauli::Y; }

  PauliString operator*(const PauliString& other) const {
    if (size() != other.size()) {
      throw std::invalid_argument("PauliString: length mismatch in product");
    }
    PauliString out(size());
    int phase = phase_pow_ + other.phase_pow_;
    for (size_t i = 0; i < size(); ++i) {
      int a = static_cast<int>(letters_[i]);
      int b = static_cast<int>(other.letters_[i]);
      out.letters_[i] = static_cast<Pauli>(kProductLetter[a][b]);
      phase += kProductPhasePow[a][b];
    }
    out.phase_pow_ = static_cast<uint8_t>(phase % 4);
    return out;
  }

  bool commutes_with(const PauliString& other) const {
    if (size() != other.size()) {
      throw std::invalid_argument("PauliString: length mismatch in commutator");
    }
    int anti = 0;
    for (size_t i = 0; i < size(); ++i) {
      Pauli a = letters_[i];
      Pauli b = other.letters_[i];
      if (a != Pauli::I && b != Pauli::I && a != b) {
        anti ^= 1;
      }
    }
    return anti == 0;
  }

  bool operator==(const PauliString& other) const {
    return phase_pow_ == other.phase_pow_ && letters_ == other.letters_;
  }

  std::string to_string() const {
    static const char* prefix[4] = {"+", "+i", "-", "-i"};
    std::string out = prefix[phase_pow_];
    for (Pauli p : letters_) {
      out += pauli_char(p);
    }
    return out;
  }

  /// Embeds this string into a larger register at the given qubit offset.
  PauliString embedded(size_t total, size_t offset) const {
    if (offset + size() > total) {
      throw std::invalid_argument("PauliString::embedded: block does not fit");
    }
    PauliString out(total);
    out.phase_pow_ = phase_pow_;
    for (size_t i = 0; i < size(); ++i) {
      out.letters_[offset + i] = letters_[i];
    }
    return out;
  }

 private:
  // kProductLetter[a][b] = letters of a*b; kProductPhasePow[a][b] = power of i
  // picked up, with the cyclic rule XY = iZ, YZ = iX, ZX = iY.
  static constexpr uint8_t kProductLetter[4][4] = {
      {0, 1, 2, 3},
      {1, 0, 3, 2},
      {2, 3, 0, 1},
      {3, 2, 1, 0},
  };
  static constexpr int kProductPhasePow[4][4] = {
      {0, 0, 0, 0},
      {0, 0, 1, 3},
      {0, 3, 0, 1},
      {0, 1, 3, 0},
  };

  uint8_t phase_pow_;
  std::vector<Pauli> letters_;
};

/// The graph-state stabilizer generator g_i = X_i prod_{j in N(i)} Z_j.
inline PauliString graph_stabilizer_generator(const Graph& g, int vertex) {
  if (vertex < 0 || vertex >= g.vertex_count()) {
    throw std::out_of_range("graph_stabilizer_generator: vertex out of range");
  }
  PauliString out(static_cast<size_t>(g.vertex_count()));
  out.set_letter(static_cast<size_t>(vertex), Pauli::X);
  for (int j : g.neighbors(vertex)) {
    out.set_letter(static_cast<size_t>(j), Pauli::Z);
  }
  return out;
}

}  // namespace abqc

#endif  // ABQC_PAULI_HPP
