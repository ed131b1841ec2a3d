#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "adw/netlist.hpp"

// Unbounded-delay interleaving exploration of 4-phase return-to-zero
// handshake cycles, with deadlock, orphan, monotonic-cover, and
// indication-class analyses.
//
// Environment model: for each codeword in the EnvSpec, the environment raises
// one rail per dual-rail input (and each 1-valued wire input) in every
// possible order, waits for phase completion (cd output high and outputs
// valid when a cd output exists, plain quiescence otherwise), then lowers the
// same rails in every order and waits for the return to spacer.  Any excited
// gate may fire at any point between environment events.
//
// A transition on net x is acknowledged by a fanout gate firing strictly
// later within the same phase.  Without an isochronic annotation every
// fanout branch needs its own acknowledging firing; with one, any branch
// acknowledges the fork.  Unacknowledged input-net transitions are wire
// orphans, internal ones gate orphans.

namespace adw {

enum class PhaseKind : uint8_t { valid, rtz };

struct PhaseId {
  int codeword_index = 0;
  PhaseKind kind = PhaseKind::valid;
  friend bool operator==(const PhaseId&, const PhaseId&) = default;
  friend auto operator<=>(const PhaseId&, const PhaseId&) = default;
};

std::string phase_to_string(const PhaseId& p);

struct TransitionEvent {
  int seq = 0;
  NetId net = -1;
  bool new_value = false;
  int source_gate = -1;  // -1 = environment
  PhaseId phase;
};

struct Trace {
  std::vector<uint8_t> initial_values;  // net values at the trace start
  std::vector<TransitionEvent> events;

  /// Applies the events in order and returns the final net values; throws if
  /// an event is not a transition relative to the evolving state.
  std::vector<uint8_t> replay() const;
};

struct CircuitState {
  std::vector<uint8_t> net_values;
  PhaseId phase;
  std::vector<NetId> pending_env;  // input nets whose event is undelivered
};

/// All-spacer quiescent state: inputs low, gates settled topologically,
/// C-elements at their reset value.
CircuitState spacer_state(const Netlist& n);

/// Union of deliverable environment events and excited-gate firings.  A
/// C-element contributes an event only when all inputs agree and differ from
/// its output.
std::vector<TransitionEvent> enabled_transitions(const Netlist& n, const CircuitState& s);

struct EnvSpec {
  // Codewords over input ports in declaration order, port 0 = MSB.  For
  // dual-rail ports the bit selects the rail; for wire ports a 1 raises the
  // wire during the valid phase.
  std::vector<uint32_t> codewords;

  static EnvSpec all_codewords(const Netlist& n);
  static EnvSpec single(uint32_t codeword);
};

struct ExploreLimits {
  uint64_t max_states = 1'000'000;
  int max_depth = 10'000;
};

enum class ExecMode { serial, parallel };

struct StateSnapshot {
  std::vector<uint8_t> net_values;
  PhaseId phase;
};

struct DeadlockFinding {
  StateSnapshot state;
  Trace trace;
};

enum class OrphanKind : uint8_t { wire, gate };

struct OrphanFinding {
  OrphanKind kind;
  NetId net;
  PhaseId phase;
  Trace trace;
};

struct MccFinding {
  enum class Kind : uint8_t { nondisjoint_excitation, nonmonotonic } kind;
  // nondisjoint_excitation: the OR/NOR join gate (by id) with >= 2 inputs
  // high; nonmonotonic: the net that transitioned twice in one phase.
  std::string gate_id;
  NetId net = -1;
  PhaseId phase;
  Trace trace;
};

enum class IndicationClass : uint8_t { strong, weak, early_output, not_self_timed };
const char* indication_class_name(IndicationClass c);

struct ExploreStats {
  uint64_t states = 0;
  uint64_t transitions = 0;
  int depth = 0;
  bool state_limit_hit = false;
  bool depth_limit_hit = false;
};

struct ReachabilityResult {
  std::vector<DeadlockFinding> deadlocks;
  std::vector<OrphanFinding> orphans;
  std::vector<MccFinding> mcc;
  // Classification evidence gathered along the way.
  bool strong_violated = false;
  bool weak_violated = false;
  // Output codewords observed at valid-phase completion, per input codeword.
  std::map<uint32_t, std::set<uint32_t>> valid_outputs;
  // Phases that completed on at least one path (phase sequence index).
  std::set<int> completed_phases;
  int phase_count = 0;
  ExploreStats stats;

  bool all_phases_completed() const { return (int)completed_phases.size() == phase_count; }
};

/// Exhaustive breadth-first reachability over all interleavings, memoized on
/// (net values, acknowledgment edges, per-phase transition flags, pending
/// events, phase).  ExecMode::parallel expands each frontier layer with
/// OpenMP; results are identical to the serial reference by construction.
ReachabilityResult explore(const Netlist& n, const EnvSpec& env, const ExploreLimits& limits = {},
                           ExecMode mode = ExecMode::serial);

const std::vector<DeadlockFinding>& detect_deadlock(const ReachabilityResult& r);
const std::vector<OrphanFinding>& detect_orphans(const ReachabilityResult& r);
const std::vector<MccFinding>& check_monotonic_cover(const ReachabilityResult& r);

/// Explores every input codeword and grades the circuit: strong when no
/// output transition ever precedes full input arrival/reset, weak when the
/// full output set never completes early, early_output otherwise, and
/// not_self_timed when a deadlock is reachable.
IndicationClass classify_indication(const Netlist& n, const ExploreLimits& limits = {},
                                    ExecMode mode = ExecMode::serial);

// --- directed scenarios (the narrated orderings) ---

struct ScenarioPhase {
  PhaseKind kind = PhaseKind::valid;
  // Environment events grouped into steps; the circuit settles fully after
  // each step.  Every event of the phase must appear in exactly one step.
  std::vector<std::vector<std::string>> steps;
};

struct Scenario {
  uint32_t codeword = 0;
  std::vector<ScenarioPhase> phases;
};

struct ScenarioResult {
  Trace trace;
  std::vector<OrphanFinding> orphans;
  std::vector<MccFinding> mcc;
  bool deadlocked = false;
  StateSnapshot final_state;
};

/// Runs one concrete interleaving: delivers each step, settles all excited
/// gates deterministically, and scans each phase for orphans at its end.
ScenarioResult run_scenario(const Netlist& n, const Scenario& sc);

}  // namespace adw
