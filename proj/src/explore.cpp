#include <algorithm>
#include <cstring>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "adw/analysis.hpp"
#include "sim_core.hpp"

namespace adw {

std::string phase_to_string(const PhaseId& p) {
  return (p.kind == PhaseKind::valid ? "valid" : "rtz") + std::string("/codeword ") +
         std::to_string(p.codeword_index);
}

const char* indication_class_name(IndicationClass c) {
  switch (c) {
    case IndicationClass::strong: return "strong";
    case IndicationClass::weak: return "weak";
    case IndicationClass::early_output: return "early_output";
    case IndicationClass::not_self_timed: return "not_self_timed";
  }
  return "?";
}

std::vector<uint8_t> Trace::replay() const {
  std::vector<uint8_t> values = initial_values;
  for (const auto& e : events) {
    if (e.net < 0 || e.net >= (NetId)values.size())
      throw std::logic_error("trace event on unknown net");
    if (values[e.net] == (uint8_t)e.new_value)
      throw std::logic_error("trace event is not a transition");
    values[e.net] = (uint8_t)e.new_value;
  }
  return values;
}

EnvSpec EnvSpec::all_codewords(const Netlist& n) {
  EnvSpec env;
  size_t k = n.inputs().size();
  if (k > 16) throw std::invalid_argument("too many inputs for exhaustive codeword enumeration");
  for (uint32_t w = 0; w < (1u << k); ++w) env.codewords.push_back(w);
  return env;
}

EnvSpec EnvSpec::single(uint32_t codeword) {
  EnvSpec env;
  env.codewords.push_back(codeword);
  return env;
}

namespace {

using namespace adw::detail;

uint64_t hash_key(const uint64_t* w, int words) {
  uint64_t h = 1469598103934665603ull;
  for (int i = 0; i <= words; ++i) {  // includes the phase word
    h ^= w[i];
    h *= 1099511628211ull;
  }
  return h;
}

struct EventRec {
  NetId net = -1;
  bool value = false;
  int source_gate = -1;  // -1 env, -2 phase advance
};

struct Succ {
  std::vector<uint64_t> key;
  EventRec ev;
  bool retoggled = false;  // event hit a net that already moved this phase
};

struct Expansion {
  std::vector<Succ> succs;
  std::vector<int> mcc_a_gates;  // OR/NOR joins with >= 2 inputs high, this state
  bool weak_viol = false;
  bool strong_viol = false;
  bool terminal = false;
  bool complete = false;
  bool have_output = false;
  uint32_t output_codeword = 0;
  std::vector<std::pair<OrphanKind, NetId>> orphans;  // scanned at phase end
};

struct PhasePlan {
  std::vector<std::vector<std::pair<NetId, bool>>> events;  // per phase index
  int count() const { return (int)events.size(); }
  PhaseId id(int p) const { return PhaseId{p / 2, (p % 2) ? PhaseKind::rtz : PhaseKind::valid}; }
};

Expansion expand_state(const Compiled& c, const PhasePlan& plan, const uint64_t* key) {
  Expansion ex;
  int p = (int)key[c.words];
  if (p >= plan.count()) {
    ex.terminal = true;
    ex.complete = true;
    return ex;
  }
  PhaseKind kind = plan.id(p).kind;
  const auto& events = plan.events[p];

  bool pending_any = false;
  for (size_t j = 0; j < events.size(); ++j)
    if (get_bit(key, c.bit_pend0 + (int)j)) pending_any = true;

  // State-level checks: non-disjoint OR/NOR excitation and the weak-indication
  // predicate (all outputs in phase-final state while inputs are pending).
  for (size_t gi = 0; gi < c.gates.size(); ++gi) {
    const auto& g = c.gates[gi];
    if (g.kind != GateKind::OR && g.kind != GateKind::NOR) continue;
    int high = 0;
    for (int k = 0; k < g.in_count; ++k)
      if (get_bit(key, c.gate_in[g.in_first + k])) ++high;
    if (high >= 2) ex.mcc_a_gates.push_back((int)gi);
  }
  // Weak-indication evidence: every output already at its phase-final state
  // while input events are still pending.  A wire output that has not moved
  // this phase is not "produced early", so it must have transitioned for the
  // state to count (dual-rail pairs always transition to reach phase state).
  bool wire_outputs_moved = true;
  for (const auto& po : c.out_ports)
    if (!po.dual && !get_bit(key, c.bit_trans0 + po.r0)) wire_outputs_moved = false;
  if (pending_any && wire_outputs_moved && all_outputs_at(c, key, kind)) ex.weak_viol = true;

  // Environment deliveries.
  for (size_t j = 0; j < events.size(); ++j) {
    if (!get_bit(key, c.bit_pend0 + (int)j)) continue;
    auto [net, value] = events[j];
    Succ s;
    s.key.assign(key, key + c.words + 1);
    s.retoggled = apply_transition(c, s.key, net, value);
    set_bit(s.key.data(), c.bit_pend0 + (int)j, false);
    s.ev = {net, value, -1};
    ex.succs.push_back(std::move(s));
  }

  // Gate firings.
  bool any_gate = false;
  for (size_t gi = 0; gi < c.gates.size(); ++gi) {
    const auto& g = c.gates[gi];
    bool target = gate_target(c, g, key);
    if (target == get_bit(key, g.out)) continue;
    any_gate = true;
    Succ s;
    s.key.assign(key, key + c.words + 1);
    // The firing acknowledges earlier transitions on all of its inputs.
    for (int e = 0; e < c.gate_ack_count[gi]; ++e)
      set_bit(s.key.data(), c.bit_edges0 + c.gate_ack_edges[c.gate_ack_first[gi] + e], false);
    s.retoggled = apply_transition(c, s.key, g.out, target);
    s.ev = {g.out, target, (int)gi};
    if (pending_any && c.env_acked[g.out] && g.out != c.cd) ex.strong_viol = true;
    ex.succs.push_back(std::move(s));
  }

  if (pending_any || any_gate) return ex;

  // Quiescent with everything delivered: phase boundary or deadlock.
  ex.terminal = true;
  bool complete;
  if (c.cd >= 0) {
    complete = get_bit(key, c.cd) == (kind == PhaseKind::valid) && dual_outputs_at(c, key, kind);
  } else {
    complete = dual_outputs_at(c, key, kind);
  }
  ex.complete = complete;
  scan_orphans(c, key, ex.orphans);
  if (complete) {
    if (kind == PhaseKind::valid) {
      ex.have_output = true;
      ex.output_codeword = decode_outputs(c, key);
    }
    if (p + 1 < plan.count()) {
      Succ s;
      s.key.assign(key, key + c.words + 1);
      // Fresh phase: clear acknowledgment edges and per-phase flags, arm the
      // next event set.
      for (int b = c.bit_edges0; b < c.bit_pend0 + c.n_pend_bits; ++b)
        set_bit(s.key.data(), b, false);
      for (size_t j = 0; j < plan.events[p + 1].size(); ++j)
        set_bit(s.key.data(), c.bit_pend0 + (int)j, true);
      s.key[c.words] = (uint64_t)(p + 1);
      s.ev = {-1, false, -2};
      ex.succs.push_back(std::move(s));
    }
  }
  return ex;
}

// ---------------------------------------------------------------------------
// BFS driver

struct StateStore {
  int words;  // data words (phase word is words-th)
  std::vector<uint64_t> arena;
  std::unordered_multimap<uint64_t, int32_t> index;

  const uint64_t* at(int32_t i) const { return arena.data() + (size_t)i * (words + 1); }
  int32_t count() const { return (int32_t)(arena.size() / (words + 1)); }

  // Returns (id, inserted).
  std::pair<int32_t, bool> intern(const uint64_t* key) {
    uint64_t h = hash_key(key, words);
    auto range = index.equal_range(h);
    for (auto it = range.first; it != range.second; ++it) {
      if (std::memcmp(at(it->second), key, sizeof(uint64_t) * (words + 1)) == 0)
        return {it->second, false};
    }
    int32_t id = count();
    arena.insert(arena.end(), key, key + words + 1);
    index.emplace(h, id);
    return {id, true};
  }
};

struct StateMeta {
  int32_t parent = -1;
  EventRec ev;
};

struct Explorer {
  const Compiled& c;
  PhasePlan plan;
  StateStore store;
  std::vector<StateMeta> meta;

  Trace trace_to(int32_t idx) const {
    Trace t;
    t.initial_values.resize(c.n_nets);
    int32_t cur = idx;
    std::vector<int32_t> path;
    while (cur >= 0) {
      path.push_back(cur);
      cur = meta[cur].parent;
    }
    const uint64_t* root = store.at(path.back());
    for (NetId x = 0; x < c.n_nets; ++x) t.initial_values[x] = get_bit(root, x);
    int seq = 1;
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      const StateMeta& m = meta[*it];
      if (m.parent < 0 || m.ev.source_gate == -2) continue;
      int parent_phase = (int)store.at(m.parent)[c.words];
      TransitionEvent e;
      e.seq = seq++;
      e.net = m.ev.net;
      e.new_value = m.ev.value;
      e.source_gate = m.ev.source_gate;
      e.phase = plan.id(std::min(parent_phase, plan.count() - 1));
      t.events.push_back(e);
    }
    return t;
  }

  StateSnapshot snapshot(int32_t idx) const {
    StateSnapshot s;
    const uint64_t* key = store.at(idx);
    s.net_values.resize(c.n_nets);
    for (NetId x = 0; x < c.n_nets; ++x) s.net_values[x] = get_bit(key, x);
    int p = (int)key[c.words];
    s.phase = plan.id(std::min(p, plan.count() > 0 ? plan.count() - 1 : 0));
    return s;
  }
};

}  // namespace

CircuitState spacer_state(const Netlist& n) {
  Compiled c = compile(n);
  CircuitState s;
  s.net_values = c.spacer;
  s.phase = {0, PhaseKind::valid};
  return s;
}

std::vector<TransitionEvent> enabled_transitions(const Netlist& n, const CircuitState& s) {
  Compiled c = compile(n);
  if ((int)s.net_values.size() != c.n_nets)
    throw std::invalid_argument("state size does not match netlist");
  std::vector<uint64_t> key(c.words + 1, 0);
  for (NetId x = 0; x < c.n_nets; ++x) set_bit(key.data(), x, s.net_values[x]);
  std::vector<TransitionEvent> out;
  for (NetId net : s.pending_env) {
    TransitionEvent e;
    e.net = net;
    e.new_value = s.phase.kind == PhaseKind::valid;
    e.source_gate = -1;
    e.phase = s.phase;
    out.push_back(e);
  }
  for (size_t gi = 0; gi < c.gates.size(); ++gi) {
    const auto& g = c.gates[gi];
    bool target = gate_target(c, g, key.data());
    if (target == get_bit(key.data(), g.out)) continue;
    TransitionEvent e;
    e.net = g.out;
    e.new_value = target;
    e.source_gate = (int)gi;
    e.phase = s.phase;
    out.push_back(e);
  }
  return out;
}

ReachabilityResult explore(const Netlist& n, const EnvSpec& env, const ExploreLimits& limits,
                           ExecMode mode) {
  auto diags = n.validate();
  if (has_errors(diags)) throw std::invalid_argument("netlist does not validate");

  Compiled c = compile(n);
  Explorer ex{c, {}, {c.words, {}, {}}, {}};
  for (uint32_t w : env.codewords) {
    ex.plan.events.push_back(phase_events(c, w, PhaseKind::valid));
    ex.plan.events.push_back(phase_events(c, w, PhaseKind::rtz));
  }

  ReachabilityResult result;
  result.phase_count = ex.plan.count();

  // Root: spacer values, phase 0, all phase-0 events pending.
  {
    std::vector<uint64_t> root(c.words + 1, 0);
    for (NetId x = 0; x < c.n_nets; ++x) set_bit(root.data(), x, c.spacer[x]);
    if (ex.plan.count() > 0)
      for (size_t j = 0; j < ex.plan.events[0].size(); ++j)
        set_bit(root.data(), c.bit_pend0 + (int)j, true);
    root[c.words] = 0;
    ex.store.intern(root.data());
    ex.meta.push_back({});
  }

  std::vector<int32_t> frontier{0};
  std::set<std::pair<int, std::string>> mcc_a_seen;        // (phase, gate id)
  std::set<std::pair<int, NetId>> mcc_b_seen;              // (phase, net)
  std::set<std::tuple<int, OrphanKind, NetId>> orph_seen;  // (phase, kind, net)
  std::set<std::pair<int, std::vector<uint8_t>>> deadlock_seen;
  int depth = 0;

  while (!frontier.empty()) {
    if (depth > limits.max_depth) {
      result.stats.depth_limit_hit = true;
      break;
    }
    std::vector<Expansion> layer(frontier.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) if (mode == ExecMode::parallel)
#endif
    for (int64_t i = 0; i < (int64_t)frontier.size(); ++i)
      layer[i] = expand_state(c, ex.plan, ex.store.at(frontier[i]));

    std::vector<int32_t> next;
    bool out_of_states = false;
    for (size_t i = 0; i < frontier.size() && !out_of_states; ++i) {
      int32_t from = frontier[i];
      Expansion& e = layer[i];
      int p = (int)ex.store.at(from)[c.words];
      PhaseId pid = ex.plan.count() ? ex.plan.id(std::min(p, ex.plan.count() - 1)) : PhaseId{};

      result.strong_violated = result.strong_violated || e.strong_viol;
      result.weak_violated = result.weak_violated || e.weak_viol;
      for (int gi : e.mcc_a_gates) {
        const std::string& gid = n.gates()[gi].id;
        if (mcc_a_seen.emplace(p, gid).second) {
          MccFinding f;
          f.kind = MccFinding::Kind::nondisjoint_excitation;
          f.gate_id = gid;
          f.net = c.gates[gi].out;
          f.phase = pid;
          f.trace = ex.trace_to(from);
          result.mcc.push_back(std::move(f));
        }
      }

      if (e.terminal && p < ex.plan.count()) {
        if (e.complete) result.completed_phases.insert(p);
        if (e.have_output) result.valid_outputs[env.codewords[p / 2]].insert(e.output_codeword);
        if (!e.complete) {
          StateSnapshot snap = ex.snapshot(from);
          if (deadlock_seen.emplace(p, snap.net_values).second) {
            DeadlockFinding f;
            f.state = std::move(snap);
            f.trace = ex.trace_to(from);
            result.deadlocks.push_back(std::move(f));
          }
        }
        for (auto [kind, net] : e.orphans) {
          if (orph_seen.emplace(p, kind, net).second) {
            OrphanFinding f;
            f.kind = kind;
            f.net = net;
            f.phase = pid;
            f.trace = ex.trace_to(from);
            result.orphans.push_back(std::move(f));
          }
        }
      }

      for (Succ& s : e.succs) {
        result.stats.transitions++;
        auto [id, inserted] = ex.store.intern(s.key.data());
        if (inserted) {
          ex.meta.push_back({from, s.ev});
          next.push_back(id);
          if ((uint64_t)ex.store.count() > limits.max_states) {
            result.stats.state_limit_hit = true;
            out_of_states = true;
            break;
          }
        }
        if (s.retoggled && s.ev.source_gate != -2) {
          if (mcc_b_seen.emplace(p, s.ev.net).second) {
            MccFinding f;
            f.kind = MccFinding::Kind::nonmonotonic;
            int d = n.driver_of(s.ev.net);
            f.gate_id = d >= 0 ? n.gates()[d].id : "";
            f.net = s.ev.net;
            f.phase = pid;
            // Path to the parent plus the re-toggling event itself.
            f.trace = ex.trace_to(from);
            TransitionEvent te;
            te.seq = (int)f.trace.events.size() + 1;
            te.net = s.ev.net;
            te.new_value = s.ev.value;
            te.source_gate = s.ev.source_gate;
            te.phase = pid;
            f.trace.events.push_back(te);
            result.mcc.push_back(std::move(f));
          }
        }
      }
    }
    if (out_of_states) break;
    frontier = std::move(next);
    ++depth;
  }

  result.stats.states = ex.store.count();
  result.stats.depth = depth;

  auto net_name = [&](NetId x) { return n.net_name(x); };
  std::stable_sort(result.orphans.begin(), result.orphans.end(),
                   [&](const OrphanFinding& a, const OrphanFinding& b) {
                     return std::tuple(a.phase, a.kind, net_name(a.net)) <
                            std::tuple(b.phase, b.kind, net_name(b.net));
                   });
  std::stable_sort(result.mcc.begin(), result.mcc.end(),
                   [&](const MccFinding& a, const MccFinding& b) {
                     return std::tuple(a.phase, a.kind, a.gate_id, a.net) <
                            std::tuple(b.phase, b.kind, b.gate_id, b.net);
                   });
  std::stable_sort(result.deadlocks.begin(), result.deadlocks.end(),
                   [](const DeadlockFinding& a, const DeadlockFinding& b) {
                     return std::tuple(a.state.phase, a.state.net_values) <
                            std::tuple(b.state.phase, b.state.net_values);
                   });
  return result;
}

const std::vector<DeadlockFinding>& detect_deadlock(const ReachabilityResult& r) {
  return r.deadlocks;
}
const std::vector<OrphanFinding>& detect_orphans(const ReachabilityResult& r) { return r.orphans; }
const std::vector<MccFinding>& check_monotonic_cover(const ReachabilityResult& r) { return r.mcc; }

IndicationClass classify_indication(const Netlist& n, const ExploreLimits& limits, ExecMode mode) {
  for (const auto& p : n.outputs()) {
    if (!p.dual_rail) {
      CircuitState s = spacer_state(n);
      if (s.net_values[p.rail0])
        throw std::invalid_argument("wire output does not idle at 0; classification undefined");
    }
  }
  // Dual-rail ports enumerate both values; wire inputs only "arrive" high.
  EnvSpec env;
  int k = (int)n.inputs().size();
  if (k > 16) throw std::invalid_argument("too many inputs to classify exhaustively");
  for (uint32_t w = 0; w < (1u << k); ++w) {
    bool ok = true;
    for (int i = 0; i < k; ++i)
      if (!n.inputs()[i].dual_rail && !((w >> (k - 1 - i)) & 1u)) ok = false;
    if (ok) env.codewords.push_back(w);
  }
  ReachabilityResult r = explore(n, env, limits, mode);
  if (r.stats.state_limit_hit || r.stats.depth_limit_hit)
    throw std::runtime_error("exploration limits exceeded during classification");
  if (!r.deadlocks.empty()) return IndicationClass::not_self_timed;
  if (!r.strong_violated) {
    // strong implies the weak predicate; anything else is an engine bug
    if (r.weak_violated) throw std::logic_error("indication ordering violated");
    return IndicationClass::strong;
  }
  if (!r.weak_violated) return IndicationClass::weak;
  return IndicationClass::early_output;
}

}  // namespace adw
