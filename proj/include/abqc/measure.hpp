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

#ifndef ABQC_MEASURE_HPP
#define ABQC_MEASURE_HPP

#include <stdexcept>

#include "abqc/rng.hpp"

namespace abqc {

constexpr double kAlgebraTol = 1e-10;    // tolerance for algebraic identities
constexpr double kPositivityTol = 1e-9;  // tolerance for density-matrix positivity
constexpr double kBranchTol = 1e-12;     // below this a measurement branch is treated as impossible

/// Outcome of a projective Pauli measurement, shared by every backend.
struct MeasureResult {
  int outcome = +1;           // +1 or -1
  double prob_plus = 1.0;     // Born probability of the +1 branch before measuring
  bool deterministic = true;  // true iff the other branch had ~zero probability
};

namespace detail {

/// Picks the measurement branch. Deterministic branches consume no
/// randomness; `force` (+1/-1) selects a branch and fails if it is empty.
inline int resolve_outcome(double prob_plus, Rng& rng, int force, bool* deterministic) {
  if (force != 0) {
    double p = force == +1 ? prob_plus : 1.0 - prob_plus;
    if (p <= kBranchTol) {
      throw std::logic_error("measure_pauli: forced branch has zero probability");
    }
    *deterministic = (1.0 - p) <= kBranchTol;
    return force;
  }
  if (prob_plus >= 1.0 - kBranchTol) {
    *deterministic = true;
    return +1;
  }
  if (prob_plus <= kBranchTol) {
    *deterministic = true;
    return -1;
  }
  *deterministic = false;
  return rng.real01() < prob_plus ? +1 : -1;
}

}  // namespace detail

}  // namespace abqc

#endif  // ABQC_MEASURE_HPP
