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

// JSON encodings for transcripts, strategies and enums. Field names and
// ordering are stable: identical runs serialize to identical bytes.

#ifndef ABQC_SERIALIZE_HPP
#define ABQC_SERIALIZE_HPP

#include <cmath>
#include <string>

#include <json.hpp>

#include "abqc/transcript.hpp"

namespace abqc {

using OrderedJson = nlohmann::ordered_json;

inline std::string to_string(Mode m) {
  switch (m) {
    case Mode::Arbitrable: return "arbitrable";
    case Mode::ArbitrableCharlieEarlyTest: return "arbitrable_charlie_early_test";
    case Mode::PrivateOnly: return "private_only";
  }
  return "?";
}

inline Mode mode_from_string(const std::string& s) {
  if (s == "arbitrable") return Mode::Arbitrable;
  if (s == "arbitrable_charlie_early_test") return Mode::ArbitrableCharlieEarlyTest;
  if (s == "private_only") return Mode::PrivateOnly;
  throw std::invalid_argument("unknown mode: " + s);
}

inline std::string to_string(Party p) {
  switch (p) {
    case Party::Bob: return "bob";
    case Party::Charlie: return "charlie";
    case Party::Alice: return "alice";
  }
  return "?";
}

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Accepted: return "accepted";
    case Verdict::BobCheating: return "bob_cheating";
    case Verdict::AliceCheating: return "alice_cheating";
  }
  return "?";
}

inline std::string to_string(Backend b) { return b == Backend::Dense ? "dense" : "tableau"; }

inline std::string to_string(BackendChoice b) {
  switch (b) {
    case BackendChoice::Dense: return "dense";
    case BackendChoice::Tableau: return "tableau";
    case BackendChoice::Auto: return "auto";
  }
  return "?";
}

inline BackendChoice backend_choice_from_string(const std::string& s) {
  if (s == "dense") return BackendChoice::Dense;
  if (s == "tableau") return BackendChoice::Tableau;
  if (s == "auto") return BackendChoice::Auto;
  throw std::invalid_argument("unknown backend: " + s);
}

inline std::string to_string(MeasurementMode m) {
  return m == MeasurementMode::Joint ? "joint" : "local_parity";
}

inline MeasurementMode measurement_mode_from_string(const std::string& s) {
  if (s == "joint") return MeasurementMode::Joint;
  if (s == "local_parity") return MeasurementMode::LocalParity;
  throw std::invalid_argument("unknown test measurement mode: " + s);
}

inline OrderedJson to_json(const StateSpec& spec) {
  OrderedJson j;
  switch (spec.kind) {
    case StateSpec::Kind::GraphState: j["kind"] = "graph"; break;
    case StateSpec::Kind::Orthogonal: j["kind"] = "orthogonal"; break;
    case StateSpec::Kind::Depolarized:
      j["kind"] = "depolarized";
      j["fidelity"] = spec.fidelity;
      break;
    case StateSpec::Kind::PlusProduct: j["kind"] = "plus"; break;
    case StateSpec::Kind::Ghz: j["kind"] = "ghz"; break;
  }
  return j;
}

inline StateSpec state_spec_from_json(const nlohmann::json& j) {
  StateSpec spec;
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "graph") {
    spec.kind = StateSpec::Kind::GraphState;
  } else if (kind == "orthogonal") {
    spec.kind = StateSpec::Kind::Orthogonal;
  } else if (kind == "depolarized") {
    spec.kind = StateSpec::Kind::Depolarized;
    spec.fidelity = j.at("fidelity").get<double>();
  } else if (kind == "plus") {
    spec.kind = StateSpec::Kind::PlusProduct;
  } else if (kind == "ghz") {
    spec.kind = StateSpec::Kind::Ghz;
  } else {
    throw std::invalid_argument("unknown state spec kind: " + kind);
  }
  return spec;
}

inline OrderedJson to_json(const BobStrategy& bob) {
  OrderedJson j;
  switch (bob.kind) {
    case BobStrategy::Kind::Honest:
      j["kind"] = "honest";
      break;
    case BobStrategy::Kind::Iid:
      j["kind"] = "iid";
      j["state"] = to_json(bob.state);
      break;
    case BobStrategy::Kind::PlantBad:
      j["kind"] = "plant_bad";
      j["count"] = bob.bad_count;
      j["state"] = to_json(bob.state);
      break;
    case BobStrategy::Kind::Entangled:
      j["kind"] = "entangled";
      j["state"] = to_json(bob.state);
      break;
  }
  return j;
}

inline BobStrategy bob_strategy_from_json(const nlohmann::json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "honest") {
    return BobStrategy::honest();
  }
  if (kind == "iid") {
    return BobStrategy::iid(state_spec_from_json(j.at("state")));
  }
  if (kind == "plant_bad") {
    return BobStrategy::plant_bad(j.at("count").get<int>(), state_spec_from_json(j.at("state")));
  }
  if (kind == "entangled") {
    return BobStrategy::entangled(state_spec_from_json(j.at("state")));
  }
  throw std::invalid_argument("unknown bob strategy: " + kind);
}

inline OrderedJson to_json(const AliceStrategy& alice) {
  OrderedJson j;
  j["kind"] = alice.kind == AliceStrategy::Kind::Honest ? "honest" : "false_reject";
  return j;
}

inline AliceStrategy alice_strategy_from_json(const nlohmann::json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "honest") {
    return AliceStrategy::honest();
  }
  if (kind == "false_reject") {
    return AliceStrategy::false_reject();
  }
  throw std::invalid_argument("unknown alice strategy: " + kind);
}

inline OrderedJson to_json(const TestRecord& record) {
  OrderedJson j;
  j["subset"] = record.subset;
  j["observable"] = record.observable.to_string();
  j["outcome"] = record.outcome;
  j["passed"] = record.passed;
  return j;
}

inline OrderedJson to_json(const Event& e) {
  OrderedJson j;
  switch (e.type) {
    case EventType::Prepare:
      j["type"] = "prepare";
      j["step"] = e.step;
      j["copies"] = e.copies;
      break;
    case EventType::Permute:
      j["type"] = "permute";
      j["step"] = e.step;
      j["party"] = to_string(e.party);
      j["order"] = e.ids;
      break;
    case EventType::Discard:
      j["type"] = "discard";
      j["step"] = e.step;
      j["copies"] = e.ids;
      break;
    case EventType::Split:
      j["type"] = "split";
      j["step"] = e.step;
      j["charlie"] = e.ids;
      j["alice"] = e.ids2;
      break;
    case EventType::Test:
      j["type"] = "test";
      j["step"] = e.step;
      j["party"] = to_string(e.party);
      j["copy"] = e.copy;
      j["record"] = to_json(e.record);
      if (std::isnan(e.record.prob_plus)) {
        j["prob_plus"] = nullptr;
      } else {
        j["prob_plus"] = e.record.prob_plus;
      }
      j["deterministic"] = e.record.deterministic;
      j["early"] = e.early;
      break;
    case EventType::Fidelity:
      j["type"] = "fidelity";
      j["step"] = e.step;
      j["copy"] = e.copy;
      j["value"] = e.value;
      break;
    case EventType::Compute:
      j["type"] = "compute";
      j["step"] = e.step;
      j["copy"] = e.copy;
      j["angles"] = e.angles;
      j["output"] = e.bits;
      break;
    case EventType::Ruling:
      j["type"] = "verdict";
      j["step"] = e.step;
      j["verdict"] = to_string(e.verdict);
      j["author"] = to_string(e.author);
      break;
  }
  return j;
}

inline OrderedJson to_json(const Transcript& t) {
  OrderedJson j;
  j["params"] = OrderedJson{{"n", t.params.n}, {"k", t.params.k}, {"m", t.params.m}};
  j["mode"] = to_string(t.params.mode);
  j["toy"] = t.params.toy;
  j["strategies"] = OrderedJson{{"bob", to_json(t.bob)}, {"alice", to_json(t.alice)}};
  j["seed"] = t.seed;
  j["backend"] = to_string(t.backend);
  OrderedJson events = OrderedJson::array();
  for (const Event& e : t.events) {
    events.push_back(to_json(e));
  }
  j["events"] = std::move(events);
  j["verdict"] = to_string(t.verdict);
  j["verdict_author"] = to_string(t.verdict_author);
  if (t.instrumented_fidelity.has_value()) {
    j["instrumented_fidelity"] = *t.instrumented_fidelity;
  } else {
    j["instrumented_fidelity"] = nullptr;
  }
  return j;
}

}  // namespace abqc

#endif  // ABQC_SERIALIZE_HPP
