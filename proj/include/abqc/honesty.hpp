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

// The graph-state honesty test: measure a uniformly random element of the
// stabilizer group and pass on outcome +1. Averaged over the 2^n group
// elements the pass probability is exactly (1 + <G|sigma|G>)/2, which makes
// one test the POVM element T = (I + |G><G|)/2.

#ifndef ABQC_HONESTY_HPP
#define ABQC_HONESTY_HPP

#include <cmath>
#include <utility>
#include <vector>

#include "abqc/graph.hpp"
#include "abqc/measure.hpp"
#include "abqc/pauli.hpp"
#include "abqc/rng.hpp"

namespace abqc {

/// How one test's observable is physically measured. Joint measures the
/// whole string at once; LocalParity measures each non-identity letter as a
/// separate single-qubit Pauli and multiplies the outcomes. The two modes
/// have identical pass-probability distributions.
enum class MeasurementMode { Joint, LocalParity };

/// One executed honesty test.
struct TestRecord {
  std::vector<int> subset;             // vertices whose generators were multiplied
  PauliString observable;              // prod_{i in subset} g_i, sign +/-1
  int outcome = +1;                    // measured eigenvalue
  bool passed = true;                  // outcome == +1
  double prob_plus = 1.0;              // Born P(+1) before measuring; NaN in LocalParity mode
  bool deterministic = true;           // no randomness was consumed for the outcome

  TestRecord() : observable(1) {}
};

/// Uniformly samples a subset S of vertices (all 2^n subsets equally likely,
/// the empty set included) and returns (S, prod_{i in S} g_i).
inline std::pair<std::vector<int>, PauliString> sample_stabilizer_element(const Graph& g, Rng& rng) {
  std::vector<int> subset;
  PauliString element = PauliString::identity(static_cast<size_t>(g.vertex_count()));
  for (int i = 0; i < g.vertex_count(); ++i) {
    if (rng.coin()) {
      subset.push_back(i);
      element = element * graph_stabilizer_generator(g, i);
    }
  }
  return {std::move(subset), std::move(element)};
}

/// Runs one honesty test on a single copy, consuming it. Works with any
/// backend that provides measure_pauli(state, PauliString, Rng&, force).
template <typename State>
TestRecord mns16_test(State& state, const Graph& g, Rng& rng, MeasurementMode mode = MeasurementMode::Joint) {
  TestRecord record;
  auto [subset, observable] = sample_stabilizer_element(g, rng);
  record.subset = std::move(subset);
  record.observable = observable;

  if (mode == MeasurementMode::Joint) {
    MeasureResult r = measure_pauli(state, observable, rng);
    record.outcome = r.outcome;
    record.prob_plus = r.prob_plus;
    record.deterministic = r.deterministic;
  } else {
    int parity = observable.sign();
    bool all_deterministic = true;
    for (size_t q = 0; q < observable.size(); ++q) {
      if (observable.letter(q) == Pauli::I) {
        continue;
      }
      PauliString single = PauliString::single(observable.size(), q, observable.letter(q));
      MeasureResult r = measure_pauli(state, single, rng);
      parity *= r.outcome;
      all_deterministic = all_deterministic && r.deterministic;
    }
    record.outcome = parity;
    record.prob_plus = std::nan("");
    record.deterministic = all_deterministic;
  }
  record.passed = record.outcome == +1;
  return record;
}

/// Tests each copy in the range once. all_passed iff every test passed; for
/// independent copies in state sigma this happens with probability
/// ((1 + <G|sigma|G>)/2)^k.
template <typename StateRange>
std::pair<bool, std::vector<TestRecord>> run_k_tests(StateRange& states, const Graph& g, Rng& rng,
                                                     MeasurementMode mode = MeasurementMode::Joint) {
  std::vector<TestRecord> records;
  bool all_passed = true;
  for (auto& state : states) {
    records.push_back(mns16_test(state, g, rng, mode));
    all_passed = all_passed && records.back().passed;
  }
  if (records.empty()) {
    throw std::invalid_argument("run_k_tests: no copies to test");
  }
  return {all_passed, std::move(records)};
}

}  // namespace abqc

#endif  // ABQC_HONESTY_HPP
