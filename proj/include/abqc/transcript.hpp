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

// Whole-run drivers and the event log they produce. A transcript is a pure
// function of (graph, params, strategies, seed, options): replaying the same
// inputs yields an identical event sequence.

#ifndef ABQC_TRANSCRIPT_HPP
#define ABQC_TRANSCRIPT_HPP

#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "abqc/protocol.hpp"

namespace abqc {

enum class EventType { Prepare, Permute, Discard, Split, Test, Fidelity, Compute, Ruling };

struct Event {
  EventType type = EventType::Prepare;
  int step = 0;

  int copies = 0;                 // Prepare
  Party party = Party::Bob;       // Permute / Test actor
  std::vector<int> ids;           // Permute order, Discard ids, Split: Charlie's ids
  std::vector<int> ids2;          // Split: Alice's ids
  int copy = -1;                  // Test / Fidelity / Compute
  TestRecord record;              // Test
  bool early = false;             // Test during the optional step-3 check
  double value = 0.0;             // Fidelity
  std::vector<double> angles;     // Compute
  std::vector<int> bits;          // Compute
  Verdict verdict = Verdict::Accepted;  // Ruling
  Party author = Party::Alice;          // Ruling
};

struct Transcript {
  ProtocolParams params;
  BobStrategy bob;
  AliceStrategy alice;
  uint64_t seed = 0;
  Backend backend = Backend::Dense;
  std::vector<Event> events;
  Verdict verdict = Verdict::Accepted;
  Party verdict_author = Party::Alice;
  std::optional<double> instrumented_fidelity;  // absent if the run aborted before step 4
};

struct RunOptions {
  BackendChoice backend = BackendChoice::Auto;
  std::vector<double> angles;  // measurement pattern; empty means all-zero
  MeasurementMode test_mode = MeasurementMode::Joint;
  int qubit_cap = kDefaultQubitCap;
};

namespace detail {

inline std::vector<double> effective_angles(const RunOptions& opts, int n) {
  if (opts.angles.empty()) {
    return std::vector<double>(static_cast<size_t>(n), 0.0);
  }
  if (static_cast<int>(opts.angles.size()) != n) {
    throw std::invalid_argument("pattern angles must have one entry per qubit");
  }
  return opts.angles;
}

inline Event test_event(int step, Party party, int copy, TestRecord record, bool early = false) {
  Event e;
  e.type = EventType::Test;
  e.step = step;
  e.party = party;
  e.copy = copy;
  e.record = std::move(record);
  e.early = early;
  return e;
}

inline void close_with_ruling(Transcript& t, int step, Verdict verdict, Party author) {
  Event e;
  e.type = EventType::Ruling;
  e.step = step;
  e.verdict = verdict;
  e.author = author;
  t.events.push_back(e);
  t.verdict = verdict;
  t.verdict_author = author;
}

}  // namespace detail

/// Executes the full arbitrated protocol (steps 1-6) for one seed.
inline Transcript run_protocol(const Graph& g, const ProtocolParams& params, const BobStrategy& bob,
                               const AliceStrategy& alice, uint64_t seed, const RunOptions& opts = {}) {
  if (params.mode == Mode::PrivateOnly) {
    throw std::invalid_argument("run_protocol: use run_private_mode for the private variant");
  }
  if (params.n != g.vertex_count()) {
    throw std::invalid_argument("run_protocol: params.n does not match the graph");
  }
  Backend backend = resolve_backend(opts.backend, bob);
  std::vector<double> angles = detail::effective_angles(opts, params.n);

  Rng bob_rng(derive_seed(seed, party_tag(Party::Bob)));
  Rng charlie_rng(derive_seed(seed, party_tag(Party::Charlie)));
  Rng alice_rng(derive_seed(seed, party_tag(Party::Alice)));

  Transcript t;
  t.params = params;
  t.bob = bob;
  t.alice = alice;
  t.seed = seed;
  t.backend = backend;

  // STEP 1: Bob prepares and hands everything to Charlie.
  CopyRegistry reg = step1_prepare(bob, params, g, backend, bob_rng, opts.qubit_cap);
  for (int id = 0; id < reg.copy_count(); ++id) {
    reg.transfer(id, Party::Charlie);
  }
  {
    Event e;
    e.type = EventType::Prepare;
    e.step = 1;
    e.copies = reg.copy_count();
    t.events.push_back(e);
  }

  // STEP 2: random permutation, discard m.
  std::vector<int> order = step2_permute_discard(reg, params, charlie_rng);
  {
    Event e;
    e.type = EventType::Permute;
    e.step = 2;
    e.party = Party::Charlie;
    e.ids = order;
    t.events.push_back(e);
    Event d;
    d.type = EventType::Discard;
    d.step = 2;
    d.ids.assign(order.begin(), order.begin() + params.m);
    t.events.push_back(d);
  }

  // STEP 3: k stay with Charlie, k+1 go to Alice.
  SplitResult split = step3_split(reg, params, order);
  {
    Event e;
    e.type = EventType::Split;
    e.step = 3;
    e.ids = split.charlie_ids;
    e.ids2 = split.alice_ids;
    t.events.push_back(e);
  }

  bool charlie_tested_early = false;
  if (params.mode == Mode::ArbitrableCharlieEarlyTest) {
    charlie_tested_early = true;
    bool all_passed = true;
    for (int id : split.charlie_ids) {
      TestRecord record = reg.run_test(id, g, charlie_rng, opts.test_mode);
      all_passed = all_passed && record.passed;
      t.events.push_back(detail::test_event(3, Party::Charlie, id, std::move(record), /*early=*/true));
    }
    if (!all_passed) {
      detail::close_with_ruling(t, 3, Verdict::BobCheating, Party::Charlie);
      return t;
    }
  }

  // STEP 4: Alice tests k of her k+1 copies and computes on the last.
  Step4Result s4 = step4_alice(reg, split.alice_ids, params, g, alice_rng, angles, opts.test_mode);
  for (size_t i = 0; i < s4.records.size(); ++i) {
    t.events.push_back(detail::test_event(4, Party::Alice, s4.tested_ids[i], s4.records[i]));
  }
  {
    Event f;
    f.type = EventType::Fidelity;
    f.step = 4;
    f.copy = s4.comp_id;
    f.value = s4.instrumented_fidelity;
    t.events.push_back(f);
    Event c;
    c.type = EventType::Compute;
    c.step = 4;
    c.copy = s4.comp_id;
    c.angles = angles;
    c.bits = s4.output_bits;
    t.events.push_back(c);
  }
  t.instrumented_fidelity = s4.instrumented_fidelity;

  // STEP 5: Alice's verdict. On acceptance Charlie's copies are released
  // unexamined and the run ends.
  if (step5_accepts(s4.alice_pass, alice)) {
    for (int id : split.charlie_ids) {
      if (!charlie_tested_early) {
        reg.release(id);
      }
    }
    detail::close_with_ruling(t, 5, Verdict::Accepted, Party::Alice);
    return t;
  }

  // STEP 6: arbitration. With the early-test option Charlie's copies were
  // already consumed at step 3 and those k passes stand in for the stored
  // copies; a rejection therefore rules against Alice.
  if (charlie_tested_early) {
    detail::close_with_ruling(t, 6, Verdict::AliceCheating, Party::Charlie);
    return t;
  }
  ArbitrationResult arb = step6_arbitrate(reg, split.charlie_ids, g, charlie_rng, opts.test_mode);
  for (size_t i = 0; i < arb.records.size(); ++i) {
    t.events.push_back(detail::test_event(6, Party::Charlie, arb.tested_ids[i], arb.records[i]));
  }
  detail::close_with_ruling(t, 6, arb.verdict, Party::Charlie);
  return t;
}

/// The private-verification variant: Bob sends k+m+1 copies straight to
/// Alice, who permutes, discards m, tests k and computes on the last copy.
/// There is no arbitration; a rejection is Alice's own claim against Bob.
inline Transcript run_private_mode(const Graph& g, const ProtocolParams& params, const BobStrategy& bob,
                                   uint64_t seed, const RunOptions& opts = {}) {
  if (params.mode != Mode::PrivateOnly) {
    throw std::invalid_argument("run_private_mode: params.mode must be PrivateOnly");
  }
  if (params.n != g.vertex_count()) {
    throw std::invalid_argument("run_private_mode: params.n does not match the graph");
  }
  Backend backend = resolve_backend(opts.backend, bob);
  std::vector<double> angles = detail::effective_angles(opts, params.n);

  Rng bob_rng(derive_seed(seed, party_tag(Party::Bob)));
  Rng alice_rng(derive_seed(seed, party_tag(Party::Alice)));

  Transcript t;
  t.params = params;
  t.bob = bob;
  t.alice = AliceStrategy::honest();
  t.seed = seed;
  t.backend = backend;

  CopyRegistry reg = step1_prepare(bob, params, g, backend, bob_rng, opts.qubit_cap);
  for (int id = 0; id < reg.copy_count(); ++id) {
    reg.transfer(id, Party::Alice);
  }
  {
    Event e;
    e.type = EventType::Prepare;
    e.step = 1;
    e.copies = reg.copy_count();
    t.events.push_back(e);
  }

  std::vector<int> order = step2_permute_discard(reg, params, alice_rng);
  {
    Event e;
    e.type = EventType::Permute;
    e.step = 2;
    e.party = Party::Alice;
    e.ids = order;
    t.events.push_back(e);
    Event d;
    d.type = EventType::Discard;
    d.step = 2;
    d.ids.assign(order.begin(), order.begin() + params.m);
    t.events.push_back(d);
  }

  std::vector<int> alice_ids(order.begin() + params.m, order.end());
  Step4Result s4 = step4_alice(reg, alice_ids, params, g, alice_rng, angles, opts.test_mode);
  for (size_t i = 0; i < s4.records.size(); ++i) {
    t.events.push_back(detail::test_event(4, Party::Alice, s4.tested_ids[i], s4.records[i]));
  }
  {
    Event f;
    f.type = EventType::Fidelity;
    f.step = 4;
    f.copy = s4.comp_id;
    f.value = s4.instrumented_fidelity;
    t.events.push_back(f);
    Event c;
    c.type = EventType::Compute;
    c.step = 4;
    c.copy = s4.comp_id;
    c.angles = angles;
    c.bits = s4.output_bits;
    t.events.push_back(c);
  }
  t.instrumented_fidelity = s4.instrumented_fidelity;

  if (s4.alice_pass) {
    detail::close_with_ruling(t, 5, Verdict::Accepted, Party::Alice);
  } else {
    detail::close_with_ruling(t, 5, Verdict::BobCheating, Party::Alice);
  }
  return t;
}

/// Runs whichever variant params.mode selects.
inline Transcript run(const Graph& g, const ProtocolParams& params, const BobStrategy& bob,
                      const AliceStrategy& alice, uint64_t seed, const RunOptions& opts = {}) {
  if (params.mode == Mode::PrivateOnly) {
    if (alice.kind != AliceStrategy::Kind::Honest) {
      throw std::invalid_argument("private mode has no arbitration; only an honest Alice is modeled");
    }
    return run_private_mode(g, params, bob, seed, opts);
  }
  return run_protocol(g, params, bob, alice, seed, opts);
}

/// Structural checks on a finished transcript: copy-consumption discipline,
/// verdict consistency, and per-step counts. Throws on violation.
inline void validate_transcript(const Transcript& t) {
  const ProtocolParams& p = t.params;
  bool is_private = p.mode == Mode::PrivateOnly;
  int total = p.total_copies();

  std::set<int> consumed;   // tested or computed
  std::set<int> discarded;  // step-2 discards
  int prepared = 0;
  int alice_tests = 0, charlie_tests = 0, early_tests = 0, computes = 0;
  bool saw_ruling = false;
  bool alice_all_passed = true;

  auto check_fresh = [&](int id) {
    if (id < 0 || id >= total) {
      throw std::logic_error("transcript: copy id out of range");
    }
    if (consumed.count(id) || discarded.count(id)) {
      throw std::logic_error("transcript: copy reused after being consumed or discarded");
    }
  };

  for (const Event& e : t.events) {
    if (saw_ruling) {
      throw std::logic_error("transcript: events after the final ruling");
    }
    switch (e.type) {
      case EventType::Prepare:
        prepared = e.copies;
        if (prepared != total) {
          throw std::logic_error("transcript: prepared copy count does not match the mode");
        }
        break;
      case EventType::Permute:
        if (static_cast<int>(e.ids.size()) != total) {
          throw std::logic_error("transcript: permutation size mismatch");
        }
        break;
      case EventType::Discard:
        if (static_cast<int>(e.ids.size()) != p.m) {
          throw std::logic_error("transcript: discard count differs from m");
        }
        for (int id : e.ids) {
          check_fresh(id);
          discarded.insert(id);
        }
        break;
      case EventType::Split:
        if (static_cast<int>(e.ids.size()) != p.k || static_cast<int>(e.ids2.size()) != p.k + 1) {
          throw std::logic_error("transcript: split sizes are not (k, k+1)");
        }
        break;
      case EventType::Test:
        check_fresh(e.copy);
        consumed.insert(e.copy);
        if (e.record.passed != (e.record.outcome == +1)) {
          throw std::logic_error("transcript: record pass flag disagrees with the outcome");
        }
        if (e.party == Party::Alice) {
          ++alice_tests;
          alice_all_passed = alice_all_passed && e.record.passed;
        } else {
          ++charlie_tests;
          early_tests += e.early;
        }
        break;
      case EventType::Fidelity:
        break;
      case EventType::Compute:
        check_fresh(e.copy);
        consumed.insert(e.copy);
        ++computes;
        break;
      case EventType::Ruling:
        saw_ruling = true;
        if (e.verdict != t.verdict || e.author != t.verdict_author) {
          throw std::logic_error("transcript: ruling event disagrees with the verdict fields");
        }
        break;
    }
  }

  if (!saw_ruling) {
    throw std::logic_error("transcript: missing final ruling");
  }
  if (computes > 1) {
    throw std::logic_error("transcript: more than one computation copy");
  }
  if (computes == 1) {
    if (alice_tests != p.k) {
      throw std::logic_error("transcript: Alice must test exactly k copies");
    }
    if (!t.instrumented_fidelity.has_value()) {
      throw std::logic_error("transcript: computation happened but no fidelity was instrumented");
    }
  }

  switch (t.verdict) {
    case Verdict::Accepted:
      if (t.verdict_author != Party::Alice) {
        throw std::logic_error("transcript: acceptance must be authored by Alice");
      }
      if (!alice_all_passed || alice_tests != p.k) {
        throw std::logic_error("transcript: acceptance requires all k of Alice's tests to pass");
      }
      if (t.alice.kind != AliceStrategy::Kind::Honest) {
        throw std::logic_error("transcript: a false-rejecting Alice never accepts");
      }
      if (charlie_tests != early_tests) {
        throw std::logic_error("transcript: arbitration tests recorded on an accepted run");
      }
      break;
    case Verdict::BobCheating:
    case Verdict::AliceCheating:
      if (is_private) {
        if (t.verdict_author != Party::Alice || t.verdict != Verdict::BobCheating) {
          throw std::logic_error("transcript: a private rejection is Alice's claim against Bob");
        }
      } else if (t.verdict_author != Party::Charlie) {
        throw std::logic_error("transcript: cheating verdicts are authored by Charlie");
      }
      if (t.alice.kind == AliceStrategy::Kind::Honest && computes == 1 && alice_all_passed) {
        throw std::logic_error("transcript: honest Alice with passing tests cannot be rejected");
      }
      break;
  }
}

}  // namespace abqc

#endif  // ABQC_TRANSCRIPT_HPP
