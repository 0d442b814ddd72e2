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
#include <cmath>
#include <sstream>

#include "abqc/experiment.hpp"
#include "abqc/tables.hpp"

using namespace abqc;
using Catch::Approx;

namespace {

nlohmann::json base_config_json() {
  return nlohmann::json::parse(R"({
    "graph": {"n": 2, "edges": [[0, 1]]},
    "params": {"k": 3, "m": 1, "mode": "arbitrable"},
    "bob": {"kind": "honest"},
    "alice": {"kind": "honest"},
    "trials": 50,
    "master_seed": 11,
    "backend": "auto"
  })");
}

}  // namespace

TEST_CASE("config parsing") {
  SECTION("full round trip of the base config") {
    ExperimentConfig cfg = config_from_json(base_config_json());
    REQUIRE(cfg.graph.vertex_count() == 2);
    REQUIRE(cfg.params.k == 3);
    REQUIRE(cfg.params.m == 1);
    REQUIRE(cfg.params.toy);
    REQUIRE(cfg.trials == 50);
    REQUIRE(cfg.master_seed == 11);
    REQUIRE(cfg.backend == BackendChoice::Auto);
  }
  SECTION("graph presets and inline edge lists") {
    auto j = base_config_json();
    j["graph"] = {{"preset", "cycle"}, {"n", 5}};
    REQUIRE(config_from_json(j).graph == Graph::cycle(5));
    j["graph"] = {{"preset", "nope"}, {"n", 3}};
    REQUIRE_THROWS_AS(config_from_json(j), std::invalid_argument);
  }
  SECTION("defaults") {
    auto j = base_config_json();
    j.erase("bob");
    j.erase("alice");
    j.erase("trials");
    ExperimentConfig cfg = config_from_json(j);
    REQUIRE(cfg.bob.kind == BobStrategy::Kind::Honest);
    REQUIRE(cfg.trials == 1);
    REQUIRE(cfg.test_mode == MeasurementMode::Joint);
  }
  SECTION("invalid combinations fail fast") {
    auto j = base_config_json();
    j["trials"] = 0;
    REQUIRE_THROWS_AS(config_from_json(j), std::invalid_argument);

    j = base_config_json();
    j["backend"] = "tableau";
    j["bob"] = {{"kind", "iid"}, {"state", {{"kind", "depolarized"}, {"fidelity", 0.5}}}};
    REQUIRE_THROWS_AS(config_from_json(j), std::invalid_argument);

    j = base_config_json();
    j["params"]["mode"] = "private_only";
    j["alice"] = {{"kind", "false_reject"}};
    REQUIRE_THROWS_AS(config_from_json(j), std::invalid_argument);

    j = base_config_json();
    j["pattern"] = {0.0};
    REQUIRE_THROWS_AS(config_from_json(j), std::invalid_argument);

    j = base_config_json();
    j["bob"] = {{"kind", "entangled"}, {"state", {{"kind", "ghz"}}}};
    REQUIRE_THROWS_AS(config_from_json(j), std::invalid_argument);  // 2*(2k+m+1) > 12 qubits
  }
}

TEST_CASE("strategy serialization round-trips") {
  for (const BobStrategy& bob :
       {BobStrategy::honest(), BobStrategy::iid({StateSpec::Kind::Depolarized, 0.7}),
        BobStrategy::plant_bad(2, {StateSpec::Kind::Orthogonal, 1.0}),
        BobStrategy::entangled({StateSpec::Kind::Ghz, 1.0})}) {
    BobStrategy back = bob_strategy_from_json(nlohmann::json::parse(to_json(bob).dump()));
    REQUIRE(back.kind == bob.kind);
    REQUIRE(back.state.kind == bob.state.kind);
    REQUIRE(back.bad_count == bob.bad_count);
  }
  AliceStrategy fr = alice_strategy_from_json(nlohmann::json::parse(to_json(AliceStrategy::false_reject()).dump()));
  REQUIRE(fr.kind == AliceStrategy::Kind::FalseReject);
}

TEST_CASE("transcript JSON carries the documented fields") {
  ExperimentConfig cfg = config_from_json(base_config_json());
  Transcript t = run(cfg.graph, cfg.params, cfg.bob, cfg.alice, 5, cfg.run_options());
  OrderedJson j = to_json(t);
  for (const char* key : {"params", "mode", "toy", "strategies", "seed", "backend", "events", "verdict",
                          "verdict_author", "instrumented_fidelity"}) {
    REQUIRE(j.contains(key));
  }
  REQUIRE(j["params"]["n"] == 2);
  REQUIRE(j["events"].is_array());
  REQUIRE(j["verdict"] == "accepted");
  bool saw_test = false;
  for (const auto& e : j["events"]) {
    if (e["type"] == "test") {
      saw_test = true;
      REQUIRE(e["record"].contains("subset"));
      REQUIRE(e["record"].contains("observable"));
      REQUIRE(e["record"].contains("outcome"));
      REQUIRE(e["record"].contains("passed"));
    }
  }
  REQUIRE(saw_test);
}

TEST_CASE("wilson interval behaves at the boundaries") {
  auto zero = wilson95(0, 100);
  REQUIRE(zero.rate == 0.0);
  REQUIRE(zero.low == 0.0);
  REQUIRE(zero.high > 0.0);
  auto one = wilson95(100, 100);
  REQUIRE(one.rate == 1.0);
  REQUIRE(one.high == 1.0);
  REQUIRE(one.low < 1.0);
  auto mid = wilson95(50, 100);
  REQUIRE(mid.low < mid.rate);
  REQUIRE(mid.rate < mid.high);
}

TEST_CASE("confidence intervals are calibrated on a known Bernoulli rate") {
  // Honest-orthogonal case: acceptance probability is exactly 2^-k.
  auto j = base_config_json();
  j["graph"] = {{"n", 1}, {"edges", nlohmann::json::array()}};
  j["params"] = {{"k", 3}, {"m", 0}, {"mode", "arbitrable"}};
  j["bob"] = {{"kind", "iid"}, {"state", {{"kind", "orthogonal"}}}};
  j["trials"] = 400;
  ExperimentConfig cfg = config_from_json(j);
  double true_rate = 1.0 / 8.0;
  int covered = 0;
  for (int experiment = 0; experiment < 100; ++experiment) {
    cfg.master_seed = 1000 + static_cast<uint64_t>(experiment);
    ExperimentSummary s = run_montecarlo(cfg);
    covered += s.accepted_rate.low <= true_rate && true_rate <= s.accepted_rate.high;
  }
  REQUIRE(covered >= 90);
}

TEST_CASE("montecarlo counts reconcile and transcripts line up") {
  ExperimentConfig cfg = config_from_json(base_config_json());
  std::ostringstream sink;
  ExperimentSummary s = run_montecarlo(cfg, 1, &sink);
  REQUIRE(s.accepted + s.bob_cheating + s.alice_cheating == s.trials);
  REQUIRE(s.accepted == 50);  // honest completeness
  REQUIRE(s.mean_fidelity_accepted.value() == Approx(1.0).margin(1e-12));
  REQUIRE(s.prediction_within_3_sigma.value());

  int lines = 0;
  std::string line;
  std::istringstream in(sink.str());
  while (std::getline(in, line)) {
    REQUIRE_NOTHROW(nlohmann::json::parse(line));
    ++lines;
  }
  REQUIRE(lines == s.trials);
}

TEST_CASE("montecarlo is deterministic and worker-count independent") {
  auto j = base_config_json();
  j["bob"] = {{"kind", "iid"}, {"state", {{"kind", "depolarized"}, {"fidelity", 0.6}}}};
  j["trials"] = 40;
  ExperimentConfig cfg = config_from_json(j);

  std::ostringstream a, b, c;
  ExperimentSummary sa = run_montecarlo(cfg, 1, &a);
  ExperimentSummary sb = run_montecarlo(cfg, 1, &b);
  ExperimentSummary sc = run_montecarlo(cfg, 4, &c);
  REQUIRE(a.str() == b.str());
  REQUIRE(a.str() == c.str());
  REQUIRE(sa.accepted == sb.accepted);
  REQUIRE(sa.accepted == sc.accepted);
  REQUIRE(sa.bob_cheating == sc.bob_cheating);
}

TEST_CASE("empirical acceptance tracks the iid prediction") {
  auto j = base_config_json();
  j["params"] = {{"k", 4}, {"m", 0}, {"mode", "arbitrable"}};
  j["bob"] = {{"kind", "iid"}, {"state", {{"kind", "depolarized"}, {"fidelity", 0.5}}}};
  j["trials"] = 3000;
  ExperimentConfig cfg = config_from_json(j);
  ExperimentSummary s = run_montecarlo(cfg);
  double predicted = std::pow(0.75, 4);
  REQUIRE(s.predicted_accept_rate.value() == Approx(predicted));
  REQUIRE(s.prediction_within_3_sigma.value());
  REQUIRE(std::abs(s.accepted_rate.rate - predicted) < 3.0 * std::sqrt(predicted * (1 - predicted) / 3000.0));
}

TEST_CASE("predictions exist exactly where they are defined") {
  auto cfg = config_from_json(base_config_json());
  REQUIRE(predicted_accept_rate(cfg).value() == 1.0);

  cfg.alice = AliceStrategy::false_reject();
  REQUIRE(predicted_accept_rate(cfg).value() == 0.0);

  cfg.alice = AliceStrategy::honest();
  cfg.bob = BobStrategy::plant_bad(1, {StateSpec::Kind::Orthogonal, 1.0});
  REQUIRE(!predicted_accept_rate(cfg).has_value());

  cfg.bob = BobStrategy::iid({StateSpec::Kind::PlusProduct, 1.0});
  // |<+ +|G>|^2 = 1/4 for the edge graph -> ((1 + 1/4)/2)^3.
  REQUIRE(predicted_accept_rate(cfg).value() == Approx(std::pow(0.625, 3)));
}

TEST_CASE("empirical acceptance times infidelity matches the joint trace") {
  // The factorization behind the soundness chain, checked end to end: for
  // iid copies, P(accept) * Tr(Pi sigma) equals the joint trace
  // Tr[(T^k (x) Pi) sigma^(k+1)].
  auto j = base_config_json();
  j["graph"] = {{"n", 1}, {"edges", nlohmann::json::array()}};
  j["params"] = {{"k", 3}, {"m", 0}, {"mode", "arbitrable"}};
  j["bob"] = {{"kind", "iid"}, {"state", {{"kind", "depolarized"}, {"fidelity", 0.5}}}};
  j["trials"] = 4000;
  ExperimentConfig cfg = config_from_json(j);
  ExperimentSummary s = run_montecarlo(cfg);

  DensityState sigma = depolarized_graph_state(cfg.graph, 0.5);
  auto identity = verify_product_identity(sigma, cfg.graph, 3);
  double infidelity = 1.0 - 0.5;
  double accept_prob = std::pow(0.75, 3);
  REQUIRE(identity.lhs == Approx(accept_prob * infidelity).margin(1e-10));
  double sigma3 = 3.0 * std::sqrt(accept_prob * (1 - accept_prob) / 4000.0);
  REQUIRE(std::abs(s.accepted_rate.rate * infidelity - identity.lhs) < sigma3 * infidelity);

  // And the final implication consumes those numbers.
  auto implication = soundness_implication(identity.lhs, infidelity, 1);
  REQUIRE(implication.acceptance_bound >= accept_prob - 1e-12);
}

TEST_CASE("bounds table rows match the closed forms") {
  auto rows = bounds_table(1, 3);
  REQUIRE(rows.size() == 3);
  REQUIRE(rows[0].min_k == 3);
  REQUIRE(rows[0].min_m_derived == 13);
  REQUIRE(rows[1].min_k == 15);
  REQUIRE(rows[1].min_m_derived == 9982);
  REQUIRE(rows[2].min_k == 35);
  for (const auto& row : rows) {
    REQUIRE(row.satisfied);
    REQUIRE(row.total <= 1.0 / (row.n * row.n));
  }
  std::string csv = bounds_table_csv(rows);
  REQUIRE(csv.find("n,min_k,min_m_derived") == 0);
  REQUIRE_THROWS_AS(bounds_table(3, 1), std::invalid_argument);
}
