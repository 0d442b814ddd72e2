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

#include <catch2/catch_amalgamated.hpp>

#include "abqc/dense.hpp"
#include "abqc/tableau.hpp"

using abqc::Graph;
using abqc::PauliString;
using abqc::StabilizerTableau;
using Catch::Approx;

namespace {

PauliString random_hermitian(int n, abqc::Rng& rng) {
  std::vector<abqc::Pauli> letters;
  for (int i = 0; i < n; ++i) {
    letters.push_back(static_cast<abqc::Pauli>(rng.below(4)));
  }
  return PauliString(std::move(letters), rng.coin() ? 0 : 2);
}

std::vector<Graph> sample_graphs() {
  return {Graph::empty(1), Graph(2, {{0, 1}}), Graph::empty(2),   Graph::path(3),
          Graph::complete(3), Graph::cycle(4),  Graph::complete(4), Graph::cycle(5)};
}

}  // namespace

TEST_CASE("graph tableau rows are the stabilizer generators") {
  StabilizerTableau t = abqc::tableau_from_graph(Graph(2, {{0, 1}}));
  REQUIRE(t.rows().size() == 2);
  REQUIRE(t.row(0).to_string() == "+XZ");
  REQUIRE(t.row(1).to_string() == "+ZX");

  StabilizerTableau t1 = abqc::tableau_from_graph(Graph::empty(1));
  REQUIRE(t1.rows().size() == 1);
  REQUIRE(t1.row(0).to_string() == "+X");

  for (const auto& g : sample_graphs()) {
    REQUIRE(abqc::tableau_from_graph(g).rows().size() == static_cast<size_t>(g.vertex_count()));
  }
}

TEST_CASE("group membership on the edge graph") {
  StabilizerTableau t = abqc::tableau_from_graph(Graph(2, {{0, 1}}));
  REQUIRE(abqc::in_stabilizer_group(t, PauliString::from_string("+YY")) == +1);
  REQUIRE(abqc::in_stabilizer_group(t, PauliString::from_string("-YY")) == -1);
  REQUIRE(!abqc::in_stabilizer_group(t, PauliString::from_string("+ZZ")).has_value());
  REQUIRE(abqc::in_stabilizer_group(t, PauliString::from_string("+II")) == +1);
  REQUIRE_THROWS_AS(abqc::in_stabilizer_group(t, PauliString::from_string("+X")), std::invalid_argument);
}

TEST_CASE("stabilized observables measure deterministically") {
  Graph g = Graph::path(3);
  StabilizerTableau t = abqc::tableau_from_graph(g);
  abqc::Rng rng(2);
  PauliString prod = abqc::graph_stabilizer_generator(g, 0) * abqc::graph_stabilizer_generator(g, 2);
  uint64_t before = rng.draw_count();
  auto r = abqc::measure_pauli(t, prod, rng);
  REQUIRE(r.outcome == +1);
  REQUIRE(r.deterministic);
  REQUIRE(rng.draw_count() == before);
}

TEST_CASE("unstabilized observables are fair coins and repeat afterwards") {
  abqc::Rng rng(4);
  int plus = 0;
  const int trials = 2000;
  for (int i = 0; i < trials; ++i) {
    StabilizerTableau t = abqc::tableau_from_graph(Graph::empty(1));
    auto r = abqc::measure_pauli(t, PauliString::from_string("Z"), rng);
    REQUIRE(r.prob_plus == Approx(0.5));
    plus += r.outcome == +1;
    // Measuring the now-deterministic observable again repeats the outcome.
    auto again = abqc::measure_pauli(t, PauliString::from_string("Z"), rng);
    REQUIRE(again.outcome == r.outcome);
    REQUIRE(again.deterministic);
    REQUIRE(t.invariants_hold());
  }
  REQUIRE(std::abs(static_cast<double>(plus) / trials - 0.5) < 3.0 * std::sqrt(0.25 / trials));
}

TEST_CASE("tableau invariants survive random measurement sequences") {
  abqc::Rng rng(6);
  for (const auto& g : sample_graphs()) {
    StabilizerTableau t = abqc::tableau_from_graph(g);
    REQUIRE(t.invariants_hold());
    for (int step = 0; step < 30; ++step) {
      abqc::measure_pauli(t, random_hermitian(g.vertex_count(), rng), rng);
      REQUIRE(t.invariants_hold());
    }
  }
}

TEST_CASE("measurement probabilities match the dense backend through sequences") {
  abqc::Rng rng(8);
  for (const auto& g : sample_graphs()) {
    StabilizerTableau t = abqc::tableau_from_graph(g);
    abqc::PureState s = abqc::make_graph_state(g);
    for (int step = 0; step < 60; ++step) {
      PauliString p = random_hermitian(g.vertex_count(), rng);
      double tableau_prob = t.prob_plus(p);
      double dense_prob = 0.5 * (1.0 + abqc::expectation(s, p));
      REQUIRE(tableau_prob == Approx(dense_prob).margin(1e-9));
      // Take the same branch on both backends to keep the states aligned.
      auto r = abqc::measure_pauli(t, p, rng);
      abqc::measure_pauli(s, p, rng, r.outcome);
    }
  }
}

TEST_CASE("flipping a generator sign models the orthogonal graph state") {
  Graph g(2, {{0, 1}});
  StabilizerTableau t = abqc::tableau_from_graph(g);
  t.flip_row_sign(0);
  REQUIRE(t.invariants_hold());
  REQUIRE(t.graph_fidelity(g) == Approx(0.0).margin(1e-12));
  REQUIRE(abqc::in_stabilizer_group(t, PauliString::from_string("-XZ")) == +1);
}

TEST_CASE("tableau graph fidelity matches the dense value") {
  abqc::Rng rng(10);
  for (const auto& g : sample_graphs()) {
    // Scramble the graph state with a few random measurements, mirroring the
    // collapses on the dense side, then compare <G|rho|G>.
    StabilizerTableau t = abqc::tableau_from_graph(g);
    abqc::PureState s = abqc::make_graph_state(g);
    for (int step = 0; step < 4; ++step) {
      PauliString p = random_hermitian(g.vertex_count(), rng);
      auto r = abqc::measure_pauli(t, p, rng);
      abqc::measure_pauli(s, p, rng, r.outcome);
    }
    REQUIRE(t.graph_fidelity(g) == Approx(abqc::fidelity_with_graph(s, g)).margin(1e-9));
  }
}

TEST_CASE("non-Hermitian observables are rejected") {
  StabilizerTableau t = abqc::tableau_from_graph(Graph::empty(1));
  abqc::Rng rng(1);
  REQUIRE_THROWS_AS(abqc::measure_pauli(t, PauliString::from_string("+iX"), rng), std::invalid_argument);
}

namespace {

std::vector<Graph> all_graphs(int n) {
  std::vector<std::pair<int, int>> slots;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      slots.emplace_back(i, j);
    }
  }
  std::vector<Graph> out;
  for (uint64_t mask = 0; mask < (1ULL << slots.size()); ++mask) {
    std::vector<std::pair<int, int>> edges;
    for (size_t s = 0; s < slots.size(); ++s) {
      if ((mask >> s) & 1ULL) {
        edges.push_back(slots[s]);
      }
    }
    out.emplace_back(n, std::move(edges));
  }
  return out;
}

}  // namespace

TEST_CASE("initial Born probabilities agree with the dense backend for every graph up to n = 5") {
  abqc::Rng rng(12);
  for (int n = 1; n <= 5; ++n) {
    for (const Graph& g : all_graphs(n)) {
      StabilizerTableau t = abqc::tableau_from_graph(g);
      abqc::PureState s = abqc::make_graph_state(g);
      for (int trial = 0; trial < 100; ++trial) {
        PauliString p = random_hermitian(n, rng);
        double dense_prob = std::clamp(0.5 * (1.0 + abqc::expectation(s, p)), 0.0, 1.0);
        if (std::abs(t.prob_plus(p) - dense_prob) > 1e-9) {
          CAPTURE(g.to_text(), p.to_string());
          REQUIRE(t.prob_plus(p) == Approx(dense_prob).margin(1e-9));
        }
      }
    }
  }
  SUCCEED();
}
