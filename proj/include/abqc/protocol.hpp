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

// The three-party delegation protocol: Bob prepares copies, Charlie permutes,
// discards and splits them, Alice tests k of her k+1 copies and computes on
// the last, and Charlie arbitrates disputes by testing his stored share.

#ifndef ABQC_PROTOCOL_HPP
#define ABQC_PROTOCOL_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "abqc/bounds.hpp"
#include "abqc/dense.hpp"
#include "abqc/graph.hpp"
#include "abqc/honesty.hpp"
#include "abqc/rng.hpp"
#include "abqc/tableau.hpp"

namespace abqc {

enum class Party { Bob, Charlie, Alice };
enum class Mode { Arbitrable, ArbitrableCharlieEarlyTest, PrivateOnly };
enum class Verdict { Accepted, BobCheating, AliceCheating };
enum class Backend { Dense, Tableau };
enum class BackendChoice { Dense, Tableau, Auto };

/// Fixed per-party seed tags for the stream split.
inline uint64_t party_tag(Party p) {
  switch (p) {
    case Party::Bob: return 1;
    case Party::Charlie: return 2;
    case Party::Alice: return 3;
  }
  return 0;
}

struct ProtocolParams {
  int n = 1;
  int k = 1;
  int m = 0;
  Mode mode = Mode::Arbitrable;
  bool toy = true;  // k or m below the paper-scale constraints

  static ProtocolParams make(int n, int k, int m, Mode mode) {
    if (n < 1 || k < 1 || m < 0) {
      throw std::invalid_argument("ProtocolParams: need n >= 1, k >= 1, m >= 0");
    }
    ProtocolParams p;
    p.n = n;
    p.k = k;
    p.m = m;
    p.mode = mode;
    p.toy = k < min_k(n) || m < min_m(n, k);
    return p;
  }

  /// Copies Bob prepares: 2k+m+1 with an arbitrator, k+m+1 without.
  int total_copies() const { return (mode == Mode::PrivateOnly ? k : 2 * k) + m + 1; }
};

/// What one prepared copy (or the whole joint state) looks like.
struct StateSpec {
  enum class Kind { GraphState, Orthogonal, Depolarized, PlusProduct, Ghz };
  Kind kind = Kind::GraphState;
  double fidelity = 1.0;  // Depolarized only

  bool stabilizer_compatible() const { return kind == Kind::GraphState || kind == Kind::Orthogonal; }
};

struct BobStrategy {
  enum class Kind { Honest, Iid, PlantBad, Entangled };
  Kind kind = Kind::Honest;
  StateSpec state;     // Iid / PlantBad bad-copy spec / Entangled joint spec
  int bad_count = 0;   // PlantBad only

  static BobStrategy honest() { return {}; }
  static BobStrategy iid(StateSpec spec) { return {Kind::Iid, spec, 0}; }
  static BobStrategy plant_bad(int count, StateSpec spec) { return {Kind::PlantBad, spec, count}; }
  static BobStrategy entangled(StateSpec spec) { return {Kind::Entangled, spec, 0}; }

  bool stabilizer_compatible() const {
    switch (kind) {
      case Kind::Honest: return true;
      case Kind::Iid:
      case Kind::PlantBad: return state.stabilizer_compatible();
      case Kind::Entangled: return false;
    }
    return false;
  }
};

struct AliceStrategy {
  enum class Kind { Honest, FalseReject };
  Kind kind = Kind::Honest;

  static AliceStrategy honest() { return {Kind::Honest}; }
  static AliceStrategy false_reject() { return {Kind::FalseReject}; }
};

using CopyVariant = std::variant<PureState, DensityState, StabilizerTableau>;

enum class CopyStatusKind { Held, Tested, Discarded, Compute };

struct CopyStatus {
  CopyStatusKind kind = CopyStatusKind::Held;
  Party holder = Party::Bob;
};

/// View of one copy's block inside a joint (entangled-mode) state. Gives the
/// honesty test and pattern execution a copy-shaped handle on shared state.
struct JointBlockRef {
  DensityState* joint = nullptr;
  int offset = 0;  // first qubit of the block in the current joint register
  int n = 0;
};

inline MeasureResult measure_pauli(JointBlockRef& ref, const PauliString& p, Rng& rng, int force = 0) {
  return measure_pauli(*ref.joint, p.embedded(static_cast<size_t>(ref.joint->qubit_count()),
                                              static_cast<size_t>(ref.offset)),
                       rng, force);
}

inline void apply_phase_diag(JointBlockRef& ref, int qubit, double theta) {
  apply_phase_diag(*ref.joint, ref.offset + qubit, theta);
}

namespace detail {

/// Maps an angle to a quarter-turn Pauli measurement if it is one.
inline std::optional<PauliString> quarter_turn_observable(size_t n, size_t qubit, double theta) {
  double turns = theta / (M_PI / 2.0);
  double rounded = std::round(turns);
  if (std::abs(turns - rounded) > 1e-9) {
    return std::nullopt;
  }
  int idx = static_cast<int>(rounded) % 4;
  if (idx < 0) {
    idx += 4;
  }
  switch (idx) {
    case 0: return PauliString::single(n, qubit, Pauli::X, +1);
    case 1: return PauliString::single(n, qubit, Pauli::Y, +1);
    case 2: return PauliString::single(n, qubit, Pauli::X, -1);
    default: return PauliString::single(n, qubit, Pauli::Y, -1);
  }
}

}  // namespace detail

/// Measures qubit i in the X-Y-plane basis of cos(theta_i) X + sin(theta_i) Y,
/// sequentially; outcome +1 records bit 0. This is the minimal stand-in for a
/// measurement-based computation on the untested copy.
template <typename State>
std::vector<int> execute_pattern(State& state, const Graph& g, const std::vector<double>& angles, Rng& rng) {
  size_t n = static_cast<size_t>(g.vertex_count());
  if (angles.size() != n) {
    throw std::invalid_argument("execute_pattern: need one angle per qubit");
  }
  std::vector<int> bits;
  bits.reserve(n);
  if constexpr (std::is_same_v<State, StabilizerTableau>) {
    for (size_t q = 0; q < n; ++q) {
      auto obs = detail::quarter_turn_observable(n, q, angles[q]);
      if (!obs.has_value()) {
        throw std::invalid_argument("execute_pattern: tableau backend only supports quarter-turn angles");
      }
      bits.push_back(measure_pauli(state, *obs, rng).outcome == +1 ? 0 : 1);
    }
  } else {
    for (size_t q = 0; q < n; ++q) {
      apply_phase_diag(state, static_cast<int>(q), angles[q]);
      PauliString x = PauliString::single(n, q, Pauli::X);
      bits.push_back(measure_pauli(state, x, rng).outcome == +1 ? 0 : 1);
    }
  }
  return bits;
}

/// Owns every copy in one protocol run and enforces the status machine:
/// a copy is Held until it is Tested, Discarded, or consumed for Compute,
/// and never used again afterwards. "Sending" a copy is a holder change,
/// not data movement.
class CopyRegistry {
 public:
  static CopyRegistry independent(int n, std::vector<CopyVariant> copies) {
    CopyRegistry reg;
    reg.n_ = n;
    reg.copies_ = std::move(copies);
    reg.status_.assign(reg.copies_.size(), CopyStatus{});
    return reg;
  }

  static CopyRegistry entangled(int n, int copy_count, DensityState joint) {
    if (joint.qubit_count() != n * copy_count) {
      throw std::invalid_argument("CopyRegistry: joint state size does not match copy layout");
    }
    CopyRegistry reg;
    reg.n_ = n;
    reg.joint_ = std::move(joint);
    reg.status_.assign(static_cast<size_t>(copy_count), CopyStatus{});
    reg.live_blocks_.resize(static_cast<size_t>(copy_count));
    std::iota(reg.live_blocks_.begin(), reg.live_blocks_.end(), 0);
    return reg;
  }

  int n() const { return n_; }
  int copy_count() const { return static_cast<int>(status_.size()); }
  bool entangled_mode() const { return joint_.has_value(); }
  const CopyStatus& status(int id) const { return status_.at(static_cast<size_t>(id)); }

  int live_count() const {
    int live = 0;
    for (const auto& s : status_) {
      live += s.kind == CopyStatusKind::Held;
    }
    return live;
  }

  void transfer(int id, Party to) {
    require_held(id);
    status_[static_cast<size_t>(id)].holder = to;
  }

  /// Discards a live copy; in entangled mode its block is traced out.
  void discard(int id) {
    require_held(id);
    if (entangled_mode()) {
      trace_out_block(id);
    }
    status_[static_cast<size_t>(id)].kind = CopyStatusKind::Discarded;
  }

  /// Marks a copy Discarded without examining or collapsing it (the fate of
  /// Charlie's stored copies when Alice accepts).
  void release(int id) {
    require_held(id);
    status_[static_cast<size_t>(id)].kind = CopyStatusKind::Discarded;
  }

  /// Runs one honesty test on the copy, consuming it.
  TestRecord run_test(int id, const Graph& g, Rng& rng, MeasurementMode mode = MeasurementMode::Joint) {
    require_held(id);
    TestRecord record;
    if (entangled_mode()) {
      JointBlockRef ref = block_ref(id);
      record = mns16_test(ref, g, rng, mode);
    } else {
      record = std::visit([&](auto& state) { return mns16_test(state, g, rng, mode); },
                          copies_[static_cast<size_t>(id)]);
    }
    status_[static_cast<size_t>(id)].kind = CopyStatusKind::Tested;
    return record;
  }

  /// Executes the measurement pattern on the copy, consuming it.
  std::vector<int> run_pattern(int id, const Graph& g, const std::vector<double>& angles, Rng& rng) {
    require_held(id);
    status_[static_cast<size_t>(id)].kind = CopyStatusKind::Compute;
    if (entangled_mode()) {
      JointBlockRef ref = block_ref(id);
      return execute_pattern(ref, g, angles, rng);
    }
    return std::visit([&](auto& state) { return execute_pattern(state, g, angles, rng); },
                      copies_[static_cast<size_t>(id)]);
  }

  /// Simulator-only instrumentation: <G|rho|G> for one live copy, invisible
  /// to the parties.
  double fidelity(int id, const Graph& g) const {
    require_held(id);
    if (entangled_mode()) {
      return fidelity_with_graph(reduced_copy(id), g);
    }
    return std::visit(
        [&](const auto& state) -> double {
          using T = std::decay_t<decltype(state)>;
          if constexpr (std::is_same_v<T, StabilizerTableau>) {
            return state.graph_fidelity(g);
          } else {
            return fidelity_with_graph(state, g);
          }
        },
        copies_[static_cast<size_t>(id)]);
  }

  /// Reduced density matrix of one copy's block (entangled mode only).
  DensityState reduced_copy(int id) const {
    if (!entangled_mode()) {
      throw std::logic_error("reduced_copy: only meaningful in entangled mode");
    }
    require_held(id);
    int offset = block_offset(id);
    std::vector<int> traced;
    for (int q = 0; q < joint_->qubit_count(); ++q) {
      if (q < offset || q >= offset + n_) {
        traced.push_back(q);
      }
    }
    if (traced.empty()) {
      return *joint_;
    }
    return partial_trace(*joint_, traced);
  }

  const DensityState& joint() const {
    if (!entangled_mode()) {
      throw std::logic_error("joint: only meaningful in entangled mode");
    }
    return *joint_;
  }

  /// Current offset of the copy's block inside the (shrinking) joint register.
  int block_offset(int id) const {
    auto it = std::find(live_blocks_.begin(), live_blocks_.end(), id);
    if (it == live_blocks_.end()) {
      throw std::logic_error("block_offset: copy's block was traced out");
    }
    return static_cast<int>(it - live_blocks_.begin()) * n_;
  }

  JointBlockRef block_ref(int id) {
    return JointBlockRef{&joint_.value(), block_offset(id), n_};
  }

 private:
  void require_held(int id) const {
    if (id < 0 || id >= copy_count()) {
      throw std::out_of_range("CopyRegistry: copy id out of range");
    }
    if (status_[static_cast<size_t>(id)].kind != CopyStatusKind::Held) {
      throw std::logic_error("CopyRegistry: copy is not live (already tested, discarded, or consumed)");
    }
  }

  void trace_out_block(int id) {
    int offset = block_offset(id);
    std::vector<int> traced(static_cast<size_t>(n_));
    std::iota(traced.begin(), traced.end(), offset);
    joint_ = partial_trace(*joint_, traced);
    live_blocks_.erase(std::find(live_blocks_.begin(), live_blocks_.end(), id));
  }

  int n_ = 1;
  std::vector<CopyVariant> copies_;          // independent mode
  std::optional<DensityState> joint_;        // entangled mode
  std::vector<int> live_blocks_;             // entangled mode: copy ids still in the joint register
  std::vector<CopyStatus> status_;
};

namespace detail {

inline CopyVariant make_copy(const StateSpec& spec, const Graph& g, Backend backend) {
  switch (spec.kind) {
    case StateSpec::Kind::GraphState:
      if (backend == Backend::Tableau) {
        return StabilizerTableau::from_graph(g);
      }
      return make_graph_state(g);
    case StateSpec::Kind::Orthogonal: {
      if (backend == Backend::Tableau) {
        StabilizerTableau t = StabilizerTableau::from_graph(g);
        t.flip_row_sign(0);
        return t;
      }
      PureState s = make_graph_state(g);
      apply_pauli_inplace(s, PauliString::single(static_cast<size_t>(g.vertex_count()), 0, Pauli::Z));
      return s;
    }
    case StateSpec::Kind::Depolarized:
      if (backend == Backend::Tableau) {
        throw std::invalid_argument("depolarized copies require the dense backend");
      }
      return depolarized_graph_state(g, spec.fidelity);
    case StateSpec::Kind::PlusProduct: {
      if (backend == Backend::Tableau) {
        throw std::invalid_argument("plus-product copies require the dense backend");
      }
      int64_t d = int64_t{1} << g.vertex_count();
      Eigen::VectorXcd amp = Eigen::VectorXcd::Constant(d, 1.0 / std::sqrt(static_cast<double>(d)));
      return PureState(g.vertex_count(), std::move(amp));
    }
    case StateSpec::Kind::Ghz:
      throw std::invalid_argument("a GHZ spec describes a joint state, not a single copy");
  }
  throw std::logic_error("make_copy: unhandled spec kind");
}

inline DensityState make_joint_state(const StateSpec& spec, const Graph& g, int copies, int qubit_cap) {
  int total = g.vertex_count() * copies;
  if (total > qubit_cap) {
    throw std::invalid_argument("entangled preparation exceeds the dense qubit cap");
  }
  if (spec.kind != StateSpec::Kind::Ghz) {
    throw std::invalid_argument("unsupported joint-state spec");
  }
  int64_t d = int64_t{1} << total;
  Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(d);
  amp(0) = 1.0 / std::sqrt(2.0);
  amp(d - 1) = 1.0 / std::sqrt(2.0);
  return density_from_pure(PureState(total, std::move(amp)));
}

}  // namespace detail

inline Backend resolve_backend(BackendChoice choice, const BobStrategy& bob) {
  switch (choice) {
    case BackendChoice::Dense:
      return Backend::Dense;
    case BackendChoice::Tableau:
      if (!bob.stabilizer_compatible()) {
        throw std::invalid_argument("tableau backend requires stabilizer-state strategies");
      }
      return Backend::Tableau;
    case BackendChoice::Auto:
      return bob.stabilizer_compatible() ? Backend::Tableau : Backend::Dense;
  }
  return Backend::Dense;
}

/// STEP 1: Bob prepares the copies and sends them on.
inline CopyRegistry step1_prepare(const BobStrategy& bob, const ProtocolParams& params, const Graph& g,
                                  Backend backend, Rng& bob_rng, int qubit_cap = kDefaultQubitCap) {
  int total = params.total_copies();
  switch (bob.kind) {
    case BobStrategy::Kind::Honest: {
      std::vector<CopyVariant> copies;
      copies.reserve(static_cast<size_t>(total));
      for (int i = 0; i < total; ++i) {
        copies.push_back(detail::make_copy(StateSpec{}, g, backend));
      }
      return CopyRegistry::independent(params.n, std::move(copies));
    }
    case BobStrategy::Kind::Iid: {
      std::vector<CopyVariant> copies;
      copies.reserve(static_cast<size_t>(total));
      for (int i = 0; i < total; ++i) {
        copies.push_back(detail::make_copy(bob.state, g, backend));
      }
      return CopyRegistry::independent(params.n, std::move(copies));
    }
    case BobStrategy::Kind::PlantBad: {
      if (bob.bad_count < 0 || bob.bad_count > total) {
        throw std::invalid_argument("PlantBad: bad-copy count exceeds the total");
      }
      std::vector<int> ids(static_cast<size_t>(total));
      std::iota(ids.begin(), ids.end(), 0);
      bob_rng.shuffle(ids);
      std::vector<bool> bad(static_cast<size_t>(total), false);
      for (int i = 0; i < bob.bad_count; ++i) {
        bad[static_cast<size_t>(ids[static_cast<size_t>(i)])] = true;
      }
      std::vector<CopyVariant> copies;
      copies.reserve(static_cast<size_t>(total));
      for (int i = 0; i < total; ++i) {
        copies.push_back(detail::make_copy(bad[static_cast<size_t>(i)] ? bob.state : StateSpec{}, g, backend));
      }
      return CopyRegistry::independent(params.n, std::move(copies));
    }
    case BobStrategy::Kind::Entangled:
      return CopyRegistry::entangled(params.n, total,
                                     detail::make_joint_state(bob.state, g, total, qubit_cap));
  }
  throw std::logic_error("step1_prepare: unhandled strategy");
}

/// STEP 2: uniformly random permutation of the copies, then the first m
/// (post-permutation) are discarded. Returns the permutation: position ->
/// copy id.
inline std::vector<int> step2_permute_discard(CopyRegistry& reg, const ProtocolParams& params, Rng& rng) {
  std::vector<int> order(static_cast<size_t>(reg.copy_count()));
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);
  for (int i = 0; i < params.m; ++i) {
    reg.discard(order[static_cast<size_t>(i)]);
  }
  return order;
}

struct SplitResult {
  std::vector<int> charlie_ids;  // k copies stored by the arbitrator
  std::vector<int> alice_ids;    // k+1 copies sent on for testing + computation
};

/// STEP 3: Charlie keeps k copies and sends the remaining k+1 to Alice.
inline SplitResult step3_split(CopyRegistry& reg, const ProtocolParams& params, const std::vector<int>& order) {
  if (reg.live_count() != 2 * params.k + 1) {
    throw std::logic_error("step3_split: expected 2k+1 live copies");
  }
  SplitResult split;
  for (int i = params.m; i < params.m + params.k; ++i) {
    int id = order[static_cast<size_t>(i)];
    reg.transfer(id, Party::Charlie);
    split.charlie_ids.push_back(id);
  }
  for (int i = params.m + params.k; i < static_cast<int>(order.size()); ++i) {
    int id = order[static_cast<size_t>(i)];
    reg.transfer(id, Party::Alice);
    split.alice_ids.push_back(id);
  }
  return split;
}

struct Step4Result {
  bool alice_pass = true;
  int comp_id = -1;
  std::vector<TestRecord> records;   // k test records, in execution order
  std::vector<int> tested_ids;       // copy ids matching `records`
  double instrumented_fidelity = 1;  // <G|rho_comp|G> right before the pattern
  std::vector<int> output_bits;
};

/// STEP 4: Alice picks a uniformly random copy as the computation copy,
/// tests the other k, then runs her measurement pattern.
inline Step4Result step4_alice(CopyRegistry& reg, const std::vector<int>& alice_ids, const ProtocolParams& params,
                               const Graph& g, Rng& rng, const std::vector<double>& angles,
                               MeasurementMode mode = MeasurementMode::Joint) {
  if (static_cast<int>(alice_ids.size()) != params.k + 1) {
    throw std::logic_error("step4_alice: expected k+1 copies");
  }
  Step4Result result;
  size_t comp_pos = static_cast<size_t>(rng.below(alice_ids.size()));
  result.comp_id = alice_ids[comp_pos];
  for (size_t i = 0; i < alice_ids.size(); ++i) {
    if (i == comp_pos) {
      continue;
    }
    int id = alice_ids[i];
    result.tested_ids.push_back(id);
    result.records.push_back(reg.run_test(id, g, rng, mode));
    result.alice_pass = result.alice_pass && result.records.back().passed;
  }
  result.instrumented_fidelity = reg.fidelity(result.comp_id, g);
  result.output_bits = reg.run_pattern(result.comp_id, g, angles, rng);
  return result;
}

/// STEP 5: honest Alice accepts iff her k tests passed; a false-rejecting
/// Alice rejects regardless.
inline bool step5_accepts(bool alice_pass, const AliceStrategy& alice) {
  return alice.kind == AliceStrategy::Kind::Honest && alice_pass;
}

struct ArbitrationResult {
  Verdict verdict = Verdict::AliceCheating;
  std::vector<TestRecord> records;
  std::vector<int> tested_ids;
};

/// STEP 6: Charlie tests his stored copies; if all pass he rules against
/// Alice, otherwise against Bob.
inline ArbitrationResult step6_arbitrate(CopyRegistry& reg, const std::vector<int>& charlie_ids, const Graph& g,
                                         Rng& rng, MeasurementMode mode = MeasurementMode::Joint) {
  ArbitrationResult result;
  bool all_passed = true;
  for (int id : charlie_ids) {
    result.tested_ids.push_back(id);
    result.records.push_back(reg.run_test(id, g, rng, mode));
    all_passed = all_passed && result.records.back().passed;
  }
  result.verdict = all_passed ? Verdict::AliceCheating : Verdict::BobCheating;
  return result;
}

}  // namespace abqc

#endif  // ABQC_PROTOCOL_HPP
