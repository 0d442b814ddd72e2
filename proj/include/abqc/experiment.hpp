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

// Experiment configuration and the Monte Carlo driver: many independent
// protocol runs with derived per-trial seeds, aggregated into verdict counts,
// Wilson confidence intervals and analytic-prediction comparisons.

#ifndef ABQC_EXPERIMENT_HPP
#define ABQC_EXPERIMENT_HPP

#include <atomic>
#include <mutex>
#include <chrono>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "abqc/serialize.hpp"

namespace abqc {

struct ExperimentConfig {
  Graph graph = Graph::empty(1);
  ProtocolParams params;
  BobStrategy bob;
  AliceStrategy alice;
  int trials = 1;
  uint64_t master_seed = 0;
  BackendChoice backend = BackendChoice::Auto;
  std::vector<double> pattern;  // empty = all-zero angles
  MeasurementMode test_mode = MeasurementMode::Joint;
  std::string output_path;      // optional JSONL transcript sink

  RunOptions run_options() const {
    RunOptions opts;
    opts.backend = backend;
    opts.angles = pattern;
    opts.test_mode = test_mode;
    return opts;
  }
};

inline Graph graph_from_json(const nlohmann::json& j) {
  if (j.contains("file")) {
    std::ifstream in(j.at("file").get<std::string>());
    if (!in) {
      throw std::invalid_argument("graph file not readable: " + j.at("file").get<std::string>());
    }
    return Graph::parse(in);
  }
  if (j.contains("preset")) {
    std::string preset = j.at("preset").get<std::string>();
    int n = j.at("n").get<int>();
    if (preset == "empty") return Graph::empty(n);
    if (preset == "path") return Graph::path(n);
    if (preset == "cycle") return Graph::cycle(n);
    if (preset == "complete") return Graph::complete(n);
    throw std::invalid_argument("unknown graph preset: " + preset);
  }
  int n = j.at("n").get<int>();
  std::vector<std::pair<int, int>> edges;
  if (j.contains("edges")) {
    for (const auto& e : j.at("edges")) {
      edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    }
  }
  return Graph(n, std::move(edges));
}

inline OrderedJson to_json(const Graph& g) {
  OrderedJson edges = OrderedJson::array();
  for (auto [u, v] : g.edges()) {
    edges.push_back(OrderedJson::array({u, v}));
  }
  return OrderedJson{{"n", g.vertex_count()}, {"edges", std::move(edges)}};
}

/// Parses the experiment config schema (see docs/file-formats.md). Throws
/// std::invalid_argument on any malformed or inconsistent field.
inline ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig cfg;
  cfg.graph = graph_from_json(j.at("graph"));
  const auto& pj = j.at("params");
  Mode mode = pj.contains("mode") ? mode_from_string(pj.at("mode").get<std::string>()) : Mode::Arbitrable;
  cfg.params = ProtocolParams::make(cfg.graph.vertex_count(), pj.at("k").get<int>(), pj.at("m").get<int>(), mode);
  cfg.bob = j.contains("bob") ? bob_strategy_from_json(j.at("bob")) : BobStrategy::honest();
  cfg.alice = j.contains("alice") ? alice_strategy_from_json(j.at("alice")) : AliceStrategy::honest();
  cfg.trials = j.value("trials", 1);
  if (cfg.trials < 1) {
    throw std::invalid_argument("trials must be >= 1");
  }
  cfg.master_seed = j.value("master_seed", uint64_t{0});
  cfg.backend = backend_choice_from_string(j.value("backend", std::string("auto")));
  if (j.contains("pattern")) {
    cfg.pattern = j.at("pattern").get<std::vector<double>>();
    if (static_cast<int>(cfg.pattern.size()) != cfg.graph.vertex_count()) {
      throw std::invalid_argument("pattern must list one angle per qubit");
    }
  }
  cfg.test_mode = measurement_mode_from_string(j.value("test_mode", std::string("joint")));
  cfg.output_path = j.value("output", std::string());

  // Fail fast on inconsistent combinations instead of mid-experiment.
  Backend resolved = resolve_backend(cfg.backend, cfg.bob);
  if (resolved == Backend::Tableau) {
    for (double theta : cfg.pattern) {
      if (!detail::quarter_turn_observable(1, 0, theta).has_value()) {
        throw std::invalid_argument("tableau backend only supports quarter-turn pattern angles");
      }
    }
  }
  if (cfg.params.mode == Mode::PrivateOnly && cfg.alice.kind != AliceStrategy::Kind::Honest) {
    throw std::invalid_argument("private mode has no arbitration; only an honest Alice is modeled");
  }
  if (cfg.bob.kind == BobStrategy::Kind::Entangled &&
      cfg.graph.vertex_count() * cfg.params.total_copies() > kDefaultQubitCap) {
    throw std::invalid_argument("entangled strategy exceeds the dense qubit cap");
  }
  return cfg;
}

inline ExperimentConfig config_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("config file not readable: " + path);
  }
  nlohmann::json j;
  in >> j;
  return config_from_json(j);
}

struct RateInterval {
  double rate = 0.0;
  double low = 0.0;
  double high = 0.0;
};

/// Wilson 95% score interval; well behaved at rates 0 and 1.
inline RateInterval wilson95(int64_t successes, int64_t total) {
  RateInterval r;
  if (total <= 0) {
    return r;
  }
  const double z = 1.959963984540054;
  double n = static_cast<double>(total);
  double p = static_cast<double>(successes) / n;
  double z2 = z * z;
  double denom = 1.0 + z2 / n;
  double center = (p + z2 / (2.0 * n)) / denom;
  double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  r.rate = p;
  r.low = successes == 0 ? 0.0 : std::max(0.0, center - half);
  r.high = successes == total ? 1.0 : std::min(1.0, center + half);
  return r;
}

/// Analytic acceptance rate where one exists: 1 for fully honest runs, 0 for
/// a false-rejecting Alice, ((1+F)/2)^k for iid preparations.
inline std::optional<double> predicted_accept_rate(const ExperimentConfig& cfg) {
  if (cfg.alice.kind == AliceStrategy::Kind::FalseReject) {
    return 0.0;
  }
  std::optional<double> fidelity;
  if (cfg.bob.kind == BobStrategy::Kind::Honest) {
    fidelity = 1.0;
  } else if (cfg.bob.kind == BobStrategy::Kind::Iid) {
    switch (cfg.bob.state.kind) {
      case StateSpec::Kind::GraphState: fidelity = 1.0; break;
      case StateSpec::Kind::Orthogonal: fidelity = 0.0; break;
      case StateSpec::Kind::Depolarized: fidelity = cfg.bob.state.fidelity; break;
      case StateSpec::Kind::PlusProduct: {
        int64_t d = int64_t{1} << cfg.graph.vertex_count();
        Eigen::VectorXcd plus = Eigen::VectorXcd::Constant(d, 1.0 / std::sqrt(static_cast<double>(d)));
        fidelity = fidelity_with_graph(PureState(cfg.graph.vertex_count(), std::move(plus)), cfg.graph);
        break;
      }
      case StateSpec::Kind::Ghz: break;
    }
  }
  if (!fidelity.has_value()) {
    return std::nullopt;
  }
  return detail::pow_int(pass_probability(*fidelity), cfg.params.k);
}

struct ExperimentSummary {
  int trials = 0;
  int64_t accepted = 0;
  int64_t bob_cheating = 0;
  int64_t alice_cheating = 0;
  int64_t reached_arbitration = 0;         // rejected runs that went to step 6
  int64_t arbitration_bob_cheating = 0;    // of those, how many ruled against Bob
  RateInterval accepted_rate;
  RateInterval bob_cheating_rate;
  RateInterval alice_cheating_rate;
  std::optional<double> predicted_accept_rate;
  std::optional<bool> prediction_within_3_sigma;
  std::optional<double> mean_fidelity_accepted;
  double wall_clock_seconds = 0.0;
};

inline OrderedJson to_json(const ExperimentSummary& s) {
  OrderedJson j;
  j["trials"] = s.trials;
  j["counts"] = OrderedJson{{"accepted", s.accepted},
                            {"bob_cheating", s.bob_cheating},
                            {"alice_cheating", s.alice_cheating}};
  auto rate = [](const RateInterval& r) {
    return OrderedJson{{"rate", r.rate}, {"wilson_low", r.low}, {"wilson_high", r.high}};
  };
  j["rates"] = OrderedJson{{"accepted", rate(s.accepted_rate)},
                           {"bob_cheating", rate(s.bob_cheating_rate)},
                           {"alice_cheating", rate(s.alice_cheating_rate)}};
  j["arbitration"] = OrderedJson{{"reached", s.reached_arbitration},
                                 {"bob_cheating", s.arbitration_bob_cheating}};
  j["predicted_accept_rate"] =
      s.predicted_accept_rate.has_value() ? OrderedJson(*s.predicted_accept_rate) : OrderedJson(nullptr);
  j["prediction_within_3_sigma"] =
      s.prediction_within_3_sigma.has_value() ? OrderedJson(*s.prediction_within_3_sigma) : OrderedJson(nullptr);
  j["mean_fidelity_accepted"] =
      s.mean_fidelity_accepted.has_value() ? OrderedJson(*s.mean_fidelity_accepted) : OrderedJson(nullptr);
  j["wall_clock_seconds"] = s.wall_clock_seconds;
  return j;
}

/// Runs the configured number of independent trials. Trial i uses seed
/// derive_seed(master_seed, i), so results do not depend on the worker count;
/// transcripts stream to `sink` in trial order as JSON lines.
inline ExperimentSummary run_montecarlo(const ExperimentConfig& cfg, int jobs = 1, std::ostream* sink = nullptr) {
  auto start = std::chrono::steady_clock::now();
  struct TrialResult {
    Verdict verdict = Verdict::Accepted;
    bool reached_arbitration = false;
    double fidelity = 0.0;
    bool has_fidelity = false;
    std::string transcript_line;
  };
  std::vector<TrialResult> results(static_cast<size_t>(cfg.trials));
  RunOptions opts = cfg.run_options();

  auto run_trial = [&](int index) {
    uint64_t seed = derive_seed(cfg.master_seed, static_cast<uint64_t>(index));
    Transcript t = run(cfg.graph, cfg.params, cfg.bob, cfg.alice, seed, opts);
    validate_transcript(t);
    TrialResult r;
    r.verdict = t.verdict;
    for (const Event& e : t.events) {
      if (e.type == EventType::Test && e.party == Party::Charlie && !e.early) {
        r.reached_arbitration = true;
        break;
      }
    }
    if (t.instrumented_fidelity.has_value()) {
      r.fidelity = *t.instrumented_fidelity;
      r.has_fidelity = true;
    }
    if (sink != nullptr) {
      r.transcript_line = to_json(t).dump();
    }
    results[static_cast<size_t>(index)] = std::move(r);
  };

  if (jobs <= 1) {
    for (int i = 0; i < cfg.trials; ++i) {
      run_trial(i);
      if (sink != nullptr) {
        (*sink) << results[static_cast<size_t>(i)].transcript_line << "\n";
        sink->flush();
      }
    }
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> workers;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    int worker_count = std::min(jobs, cfg.trials);
    workers.reserve(static_cast<size_t>(worker_count));
    for (int w = 0; w < worker_count; ++w) {
      workers.emplace_back([&] {
        try {
          for (int i = next.fetch_add(1); i < cfg.trials; i = next.fetch_add(1)) {
            run_trial(i);
          }
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) {
            failure = std::current_exception();
          }
          next.store(cfg.trials);  // stop the other workers
        }
      });
    }
    for (auto& t : workers) {
      t.join();
    }
    if (failure) {
      std::rethrow_exception(failure);
    }
    if (sink != nullptr) {
      for (const auto& r : results) {
        (*sink) << r.transcript_line << "\n";
      }
      sink->flush();
    }
  }

  ExperimentSummary s;
  s.trials = cfg.trials;
  double fidelity_sum = 0.0;
  int64_t fidelity_count = 0;
  for (const auto& r : results) {
    switch (r.verdict) {
      case Verdict::Accepted:
        ++s.accepted;
        if (r.has_fidelity) {
          fidelity_sum += r.fidelity;
          ++fidelity_count;
        }
        break;
      case Verdict::BobCheating: ++s.bob_cheating; break;
      case Verdict::AliceCheating: ++s.alice_cheating; break;
    }
    if (r.reached_arbitration) {
      ++s.reached_arbitration;
      s.arbitration_bob_cheating += r.verdict == Verdict::BobCheating;
    }
  }
  s.accepted_rate = wilson95(s.accepted, cfg.trials);
  s.bob_cheating_rate = wilson95(s.bob_cheating, cfg.trials);
  s.alice_cheating_rate = wilson95(s.alice_cheating, cfg.trials);
  if (fidelity_count > 0) {
    s.mean_fidelity_accepted = fidelity_sum / static_cast<double>(fidelity_count);
  }
  s.predicted_accept_rate = predicted_accept_rate(cfg);
  if (s.predicted_accept_rate.has_value()) {
    double p = *s.predicted_accept_rate;
    double empirical = s.accepted_rate.rate;
    if (p <= 0.0 || p >= 1.0) {
      s.prediction_within_3_sigma = empirical == p;
    } else {
      double sigma = std::sqrt(p * (1.0 - p) / cfg.trials);
      s.prediction_within_3_sigma = std::abs(empirical - p) <= 3.0 * sigma;
    }
  }
  s.wall_clock_seconds =
      std::chrono::duration_cast<std::chrono::duration<double>>(std::chrono::steady_clock::now() - start).count();
  return s;
}

}  // namespace abqc

#endif  // ABQC_EXPERIMENT_HPP
