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

// Minimal end-to-end example: one honest run on the 3-cycle graph state,
// printing the verdict and the transcript JSON.

#include <iostream>

#include "abqc/serialize.hpp"

int main() {
  abqc::Graph g = abqc::Graph::cycle(3);
  auto params = abqc::ProtocolParams::make(g.vertex_count(), 4, 2, abqc::Mode::Arbitrable);

  abqc::Transcript t = abqc::run_protocol(g, params, abqc::BobStrategy::honest(),
                                          abqc::AliceStrategy::honest(), /*seed=*/2026);
  abqc::validate_transcript(t);

  std::cout << "verdict: " << abqc::to_string(t.verdict) << "\n";
  std::cout << "computation copy fidelity: " << *t.instrumented_fidelity << "\n";
  std::cout << abqc::to_json(t).dump(2) << "\n";
  return 0;
}
