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

// Deterministic verification suites: each checks one identity of the
// soundness analysis (or backend agreement) by brute force and reports the
// largest deviation it observed.

#ifndef ABQC_VERIFY_HPP
#define ABQC_VERIFY_HPP

#include <string>
#include <vector>

#include "abqc/bounds.hpp"
#include "abqc/honesty.hpp"
#include "abqc/tableau.hpp"

namespace abqc {

struct SuiteResult {
  std::string name;
  std::string metric;       // what max_deviation measures
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

/// All connected labeled graphs on n vertices (64 candidates at n=4).
inline std::vector<Graph> all_connected_graphs(int n) {
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
    Graph g(n, std::move(edges));
    if (g.connected()) {
      out.push_back(std::move(g));
    }
  }
  return out;
}

/// Joint trace vs product form, random sigma, n in {1,2}, k in {1,2,3}.
inline SuiteResult verify_suite_product_identity(int per_case = 20, uint64_t seed = 2026) {
  SuiteResult r{"product-identity", "abs(joint trace - product form)", 0.0, 1e-10, false};
  Rng rng(seed);
  for (int n : {1, 2}) {
    Graph g = n == 1 ? Graph::empty(1) : Graph(2, {{0, 1}});
    for (int k : {1, 2, 3}) {
      for (int t = 0; t < per_case; ++t) {
        DensityState sigma = random_density(n, rng);
        r.max_deviation = std::max(r.max_deviation, verify_product_identity(sigma, g, k).difference);
      }
    }
  }
  r.passed = r.max_deviation < r.tolerance;
  return r;
}

/// Random-state sweep of 2x^k(1-x) against the analytic maximum plus the
/// argmax-achieving depolarized state.
inline SuiteResult verify_suite_eq1_bound(int trials = 1000, uint64_t seed = 2027) {
  SuiteResult r{"eq1-bound", "excess over the analytic maximum", 0.0, 1e-9, false};
  Rng rng(seed);
  bool structure_ok = true;
  for (int n : {1, 2}) {
    Graph g = n == 1 ? Graph::empty(1) : Graph(2, {{0, 1}});
    for (int64_t k : {int64_t{1}, int64_t{2}, int64_t{3}, min_k(n)}) {
      auto sweep = verify_eq1_bound(g, k, trials, rng);
      r.max_deviation = std::max(r.max_deviation, sweep.max_value - sweep.analytic_max);
      structure_ok = structure_ok && sweep.analytic_max <= sweep.paper_bound + 1e-15;
      if (k >= min_k(n)) {
        structure_ok = structure_ok && sweep.max_value <= 1.0 / (2.0 * n * n) + 1e-12;
      }
      // The depolarized state at argmax fidelity achieves the maximum.
      double f_star = (static_cast<double>(k) - 1.0) / (static_cast<double>(k) + 1.0);
      if (f_star >= 1.0 / static_cast<double>(int64_t{1} << n)) {
        DensityState sigma = depolarized_graph_state(g, f_star);
        double value = deviation_value(pass_probability(fidelity_with_graph(sigma, g)), k);
        r.max_deviation = std::max(r.max_deviation, std::abs(value - deviation_maximum(k).value));
      }
    }
  }
  r.passed = structure_ok && r.max_deviation < r.tolerance;
  return r;
}

/// Grid search of the deviation curve for k = 1..k_max.
inline SuiteResult verify_suite_deviation_max(int64_t k_max = 50, double step = 1e-6) {
  SuiteResult r{"deviation-max", "grid excess over the analytic maximum", 0.0, 1e-9, false};
  double worst_argmax_error = 0.0;
  int64_t steps = static_cast<int64_t>(std::llround(1.0 / step));
  for (int64_t k = 1; k <= k_max; ++k) {
    auto analytic = deviation_maximum(k);
    double best = -1.0, best_x = 0.0;
    for (int64_t i = 0; i <= steps; ++i) {
      double x = static_cast<double>(i) * step;
      double v = 2.0 * detail::pow_int(x, k) * (1.0 - x);
      if (v > best) {
        best = v;
        best_x = x;
      }
    }
    r.max_deviation = std::max(r.max_deviation, best - analytic.value);
    worst_argmax_error = std::max(worst_argmax_error, std::abs(best_x - analytic.argmax));
  }
  r.passed = r.max_deviation < r.tolerance && worst_argmax_error <= 1e-5;
  return r;
}

/// Exact POVM realization: the subset-averaged pass probability equals
/// (1 + <G|sigma|G>)/2.
inline SuiteResult verify_suite_povm_identity(int per_case = 20, uint64_t seed = 2028) {
  SuiteResult r{"povm-identity", "abs(subset average - (1+F)/2)", 0.0, 1e-10, false};
  Rng rng(seed);
  for (int n = 1; n <= 3; ++n) {
    Graph g = n == 1 ? Graph::empty(1) : (n == 2 ? Graph(2, {{0, 1}}) : Graph::path(3));
    for (int t = 0; t < per_case; ++t) {
      DensityState sigma = random_density(n, rng);
      double sum = 0.0;
      int64_t subsets = int64_t{1} << n;
      for (int64_t mask = 0; mask < subsets; ++mask) {
        PauliString element = PauliString::identity(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) {
          if ((mask >> i) & 1) {
            element = element * graph_stabilizer_generator(g, i);
          }
        }
        sum += 0.5 * (1.0 + expectation(sigma, element));
      }
      double averaged = sum / static_cast<double>(subsets);
      double target = 0.5 + 0.5 * fidelity_with_graph(sigma, g);
      r.max_deviation = std::max(r.max_deviation, std::abs(averaged - target));
    }
  }
  r.passed = r.max_deviation < r.tolerance;
  return r;
}

/// Tableau vs dense Born probabilities along aligned random measurement
/// sequences, over every connected graph with n <= 4 plus the 5-cycle.
inline SuiteResult verify_suite_backend_equivalence(int measurements_per_graph = 100, uint64_t seed = 2029) {
  SuiteResult r{"backend-equivalence", "abs(tableau prob - dense prob)", 0.0, 1e-9, false};
  std::vector<Graph> graphs;
  for (int n = 1; n <= 4; ++n) {
    for (auto& g : all_connected_graphs(n)) {
      graphs.push_back(std::move(g));
    }
  }
  graphs.push_back(Graph::cycle(5));

  Rng rng(seed);
  for (const Graph& g : graphs) {
    int n = g.vertex_count();
    StabilizerTableau tab = tableau_from_graph(g);
    PureState dense = make_graph_state(g);
    for (int step = 0; step < measurements_per_graph; ++step) {
      PauliString p(static_cast<size_t>(n));
      if (step % 2 == 0) {
        p = sample_stabilizer_element(g, rng).second;
      } else {
        std::vector<Pauli> letters;
        for (int q = 0; q < n; ++q) {
          letters.push_back(static_cast<Pauli>(rng.below(4)));
        }
        p = PauliString(std::move(letters), rng.coin() ? 0 : 2);
      }
      double tableau_prob = tab.prob_plus(p);
      double dense_prob = std::clamp(0.5 * (1.0 + expectation(dense, p)), 0.0, 1.0);
      r.max_deviation = std::max(r.max_deviation, std::abs(tableau_prob - dense_prob));
      auto outcome = measure_pauli(tab, p, rng);
      measure_pauli(dense, p, rng, outcome.outcome);  // keep the states aligned
    }
  }
  r.passed = r.max_deviation < r.tolerance;
  return r;
}

/// min_k / min_m minimality and the assembled budget.
inline SuiteResult verify_suite_minimality() {
  SuiteResult r{"minimality", "constraint violations (count)", 0.0, 0.5, false};
  int violations = 0;
  for (int n = 1; n <= 50; ++n) {
    int64_t k = min_k(n);
    double half = 1.0 / (2.0 * n * n);
    violations += !(2.0 / static_cast<double>(k + 1) <= half);
    violations += !(2.0 / static_cast<double>(k) > half);
  }
  for (int n = 1; n <= 5; ++n) {
    double target = 1.0 / (2.0 * n * n);
    for (int64_t k = 1; k <= 50; ++k) {
      int64_t m = min_m(n, k);
      violations += !(definetti_term(k, n, static_cast<double>(m)) <= target);
      violations += m > 1 && !(definetti_term(k, n, static_cast<double>(m - 1)) > target);
    }
  }
  for (int n = 1; n <= 10; ++n) {
    int64_t k = min_k(n);
    auto b = budget(n, k, min_m(n, k));
    violations += !b.satisfied;
    violations += !(b.total <= 1.0 / (static_cast<double>(n) * n));
  }
  r.max_deviation = violations;
  r.passed = violations == 0;
  return r;
}

inline std::vector<SuiteResult> run_verification_suites(const std::string& only = "") {
  std::vector<SuiteResult> out;
  auto want = [&](const std::string& name) { return only.empty() || only == name; };
  if (want("product-identity")) out.push_back(verify_suite_product_identity());
  if (want("eq1-bound")) out.push_back(verify_suite_eq1_bound());
  if (want("deviation-max")) out.push_back(verify_suite_deviation_max());
  if (want("povm-identity")) out.push_back(verify_suite_povm_identity());
  if (want("backend-equivalence")) out.push_back(verify_suite_backend_equivalence());
  if (want("minimality")) out.push_back(verify_suite_minimality());
  return out;
}

}  // namespace abqc

#endif  // ABQC_VERIFY_HPP
