#include "adw/analysis.hpp"
#include "sim_core.hpp"

namespace adw {

using namespace adw::detail;

ScenarioResult run_scenario(const Netlist& n, const Scenario& sc) {
  if (has_errors(n.validate())) throw std::invalid_argument("netlist does not validate");
  Compiled c = compile(n);

  std::vector<uint64_t> key(c.words + 1, 0);
  for (NetId x = 0; x < c.n_nets; ++x) set_bit(key.data(), x, c.spacer[x]);

  ScenarioResult result;
  result.trace.initial_values = c.spacer;
  int seq = 1;

  std::set<std::pair<int, std::string>> mcc_a_seen;
  std::set<std::pair<int, NetId>> mcc_b_seen;

  auto record = [&](NetId net, bool value, int source, PhaseId pid) {
    TransitionEvent e;
    e.seq = seq++;
    e.net = net;
    e.new_value = value;
    e.source_gate = source;
    e.phase = pid;
    result.trace.events.push_back(e);
  };

  auto scan_mcc_a = [&](int phase_pos, PhaseId pid) {
    for (size_t gi = 0; gi < c.gates.size(); ++gi) {
      const auto& g = c.gates[gi];
      if (g.kind != GateKind::OR && g.kind != GateKind::NOR) continue;
      int high = 0;
      for (int k = 0; k < g.in_count; ++k)
        if (get_bit(key.data(), c.gate_in[g.in_first + k])) ++high;
      if (high < 2) continue;
      if (!mcc_a_seen.emplace(phase_pos, n.gates()[gi].id).second) continue;
      MccFinding f;
      f.kind = MccFinding::Kind::nondisjoint_excitation;
      f.gate_id = n.gates()[gi].id;
      f.net = g.out;
      f.phase = pid;
      f.trace = result.trace;
      result.mcc.push_back(std::move(f));
    }
  };

  auto note_retoggle = [&](bool retoggled, NetId net, int phase_pos, PhaseId pid) {
    if (!retoggled || !mcc_b_seen.emplace(phase_pos, net).second) return;
    MccFinding f;
    f.kind = MccFinding::Kind::nonmonotonic;
    int d = n.driver_of(net);
    f.gate_id = d >= 0 ? n.gates()[d].id : "";
    f.net = net;
    f.phase = pid;
    f.trace = result.trace;
    result.mcc.push_back(std::move(f));
  };

  auto settle = [&](int phase_pos, PhaseId pid) {
    for (size_t iter = 0;; ++iter) {
      if (iter > 4 * c.gates.size() * c.gates.size() + 64)
        throw std::logic_error("scenario settle did not converge");
      bool fired = false;
      for (size_t gi = 0; gi < c.gates.size(); ++gi) {
        const auto& g = c.gates[gi];
        bool target = gate_target(c, g, key.data());
        if (target == get_bit(key.data(), g.out)) continue;
        for (int e = 0; e < c.gate_ack_count[gi]; ++e)
          set_bit(key.data(), c.bit_edges0 + c.gate_ack_edges[c.gate_ack_first[gi] + e], false);
        bool re = apply_transition(c, key, g.out, target);
        record(g.out, target, (int)gi, pid);
        note_retoggle(re, g.out, phase_pos, pid);
        scan_mcc_a(phase_pos, pid);
        fired = true;
        break;  // rescan from the first gate for a stable order
      }
      if (!fired) return;
    }
  };

  for (size_t phase_pos = 0; phase_pos < sc.phases.size(); ++phase_pos) {
    const ScenarioPhase& ph = sc.phases[phase_pos];
    PhaseId pid{(int)phase_pos / 2, ph.kind};

    // Fresh phase: clear acknowledgment edges and transition flags.
    for (int b = c.bit_edges0; b < c.bit_trans0 + c.n_nets; ++b) set_bit(key.data(), b, false);

    auto events = phase_events(c, sc.codeword, ph.kind);
    std::vector<bool> used(events.size(), false);
    size_t delivered = 0;

    scan_mcc_a((int)phase_pos, pid);
    for (const auto& step : ph.steps) {
      for (const std::string& name : step) {
        NetId net = n.net_id(name);
        if (net < 0) throw std::invalid_argument("scenario names unknown net '" + name + "'");
        bool found = false;
        for (size_t j = 0; j < events.size(); ++j) {
          if (events[j].first != net || used[j]) continue;
          used[j] = true;
          found = true;
          bool re = apply_transition(c, key, net, events[j].second);
          record(net, events[j].second, -1, pid);
          note_retoggle(re, net, (int)phase_pos, pid);
          scan_mcc_a((int)phase_pos, pid);
          ++delivered;
          break;
        }
        if (!found)
          throw std::invalid_argument("scenario event '" + name +
                                      "' is not pending in this phase");
      }
      settle((int)phase_pos, pid);
    }
    if (delivered != events.size())
      throw std::invalid_argument("scenario does not deliver every event of the phase");

    // Phase boundary: orphan scan, then the completion predicate.
    std::vector<std::pair<OrphanKind, NetId>> raw;
    scan_orphans(c, key.data(), raw);
    for (auto [kind, net] : raw) {
      OrphanFinding f;
      f.kind = kind;
      f.net = net;
      f.phase = pid;
      f.trace = result.trace;
      result.orphans.push_back(std::move(f));
    }
    bool complete;
    if (c.cd >= 0) {
      complete = get_bit(key.data(), c.cd) == (ph.kind == PhaseKind::valid) &&
                 dual_outputs_at(c, key.data(), ph.kind);
    } else {
      complete = dual_outputs_at(c, key.data(), ph.kind);
    }
    if (!complete) result.deadlocked = true;
  }

  result.final_state.net_values.resize(c.n_nets);
  for (NetId x = 0; x < c.n_nets; ++x) result.final_state.net_values[x] = get_bit(key.data(), x);
  if (!sc.phases.empty())
    result.final_state.phase = PhaseId{((int)sc.phases.size() - 1) / 2, sc.phases.back().kind};

  std::stable_sort(result.orphans.begin(), result.orphans.end(),
                   [&](const OrphanFinding& a, const OrphanFinding& b) {
                     return std::tuple(a.phase, a.kind, n.net_name(a.net)) <
                            std::tuple(b.phase, b.kind, n.net_name(b.net));
                   });
  return result;
}

}  // namespace adw
