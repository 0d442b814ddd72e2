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

// Sweeps an iid adversary's copy fidelity and compares the measured
// acceptance rate against the analytic ((1+F)/2)^k curve.

#include <cstdio>

#include "abqc/experiment.hpp"

int main() {
  const int k = 4;
  const int trials = 2000;
  abqc::ExperimentConfig cfg;
  cfg.graph = abqc::Graph(2, {{0, 1}});
  cfg.params = abqc::ProtocolParams::make(2, k, 2, abqc::Mode::Arbitrable);
  cfg.alice = abqc::AliceStrategy::honest();
  cfg.trials = trials;
  cfg.master_seed = 7;

  std::printf("%8s %12s %12s %10s\n", "F", "accept-rate", "predicted", "within-3s");
  for (double f : {0.25, 0.4, 0.55, 0.7, 0.85, 1.0}) {
    cfg.bob = f == 1.0 ? abqc::BobStrategy::honest()
                       : abqc::BobStrategy::iid({abqc::StateSpec::Kind::Depolarized, f});
    abqc::ExperimentSummary s = abqc::run_montecarlo(cfg, /*jobs=*/2);
    std::printf("%8.2f %12.4f %12.4f %10s\n", f, s.accepted_rate.rate, *s.predicted_accept_rate,
                *s.prediction_within_3_sigma ? "yes" : "NO");
  }
  return 0;
}
