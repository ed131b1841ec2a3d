#include "sim_core.hpp"

namespace adw::detail {

Compiled compile(const Netlist& nl) {
  Compiled c;
  c.nl = &nl;
  c.n_nets = nl.net_count();

  for (const auto& g : nl.gates()) {
    Compiled::CGate cg;
    cg.kind = g.kind;
    cg.in_first = (int)c.gate_in.size();
    for (NetId in : g.inputs) c.gate_in.push_back(in);
    cg.in_count = (int)g.inputs.size();
    cg.out = g.output;
    cg.init = g.init_out;
    c.gates.push_back(cg);
  }

  std::vector<std::vector<int>> edges_of_net(c.n_nets);
  c.gate_ack_first.resize(c.gates.size());
  c.gate_ack_count.resize(c.gates.size());
  for (size_t gi = 0; gi < c.gates.size(); ++gi) {
    c.gate_ack_first[gi] = (int)c.gate_ack_edges.size();
    std::vector<NetId> seen;
    const auto& cg = c.gates[gi];
    for (int k = 0; k < cg.in_count; ++k) {
      NetId in = c.gate_in[cg.in_first + k];
      if (std::find(seen.begin(), seen.end(), in) != seen.end()) continue;
      seen.push_back(in);
      int edge = c.n_edges++;
      edges_of_net[in].push_back(edge);
      c.gate_ack_edges.push_back(edge);
    }
    c.gate_ack_count[gi] = (int)c.gate_ack_edges.size() - c.gate_ack_first[gi];
  }
  c.net_edge_first.resize(c.n_nets);
  c.net_edge_count.resize(c.n_nets);
  {
    std::vector<int> remap(c.n_edges);
    int next = 0;
    for (NetId x = 0; x < c.n_nets; ++x) {
      c.net_edge_first[x] = next;
      c.net_edge_count[x] = (int)edges_of_net[x].size();
      for (int e : edges_of_net[x]) remap[e] = next++;
    }
    for (int& e : c.gate_ack_edges) e = remap[e];
  }

  c.iso.assign(c.n_nets, 0);
  for (NetId id : nl.isochronic()) c.iso[id] = 1;
  c.is_pi_net.assign(c.n_nets, 0);
  for (const auto& p : nl.inputs()) {
    Compiled::CPort cp{p.rail0, p.rail1, p.dual_rail};
    c.in_ports.push_back(cp);
    if (p.rail0 >= 0) c.is_pi_net[p.rail0] = 1;
    if (p.rail1 >= 0) c.is_pi_net[p.rail1] = 1;
  }
  c.env_acked.assign(c.n_nets, 0);
  for (const auto& p : nl.outputs()) {
    Compiled::CPort cp{p.rail0, p.rail1, p.dual_rail};
    c.out_ports.push_back(cp);
    if (p.rail0 >= 0) c.env_acked[p.rail0] = 1;
    if (p.rail1 >= 0) c.env_acked[p.rail1] = 1;
  }
  c.cd = nl.cd_output();
  if (c.cd >= 0) c.env_acked[c.cd] = 1;

  // Spacer steady state: sweep to fixpoint (acyclic, so bounded).
  c.spacer.assign(c.n_nets, 0);
  for (const auto& g : c.gates)
    if (g.kind == GateKind::C) c.spacer[g.out] = g.init;
  for (size_t round = 0;; ++round) {
    bool changed = false;
    for (const auto& g : c.gates) {
      bool all1 = true, any1 = false;
      for (int k = 0; k < g.in_count; ++k) {
        bool v = c.spacer[c.gate_in[g.in_first + k]];
        all1 = all1 && v;
        any1 = any1 || v;
      }
      bool out = c.spacer[g.out];
      bool next = out;
      switch (g.kind) {
        case GateKind::AND: next = all1; break;
        case GateKind::OR: next = any1; break;
        case GateKind::NAND: next = !all1; break;
        case GateKind::NOR: next = !any1; break;
        case GateKind::INV: next = !any1; break;
        case GateKind::BUF: next = any1; break;
        case GateKind::C:
          if (all1) next = true;
          if (!any1) next = false;
          break;
      }
      if (next != out) {
        c.spacer[g.out] = next;
        changed = true;
      }
    }
    if (!changed) break;
    if (round > c.gates.size() + 1) throw std::logic_error("spacer evaluation did not settle");
  }

  int bits = c.n_nets;
  c.bit_edges0 = bits;
  bits += c.n_edges;
  c.bit_trans0 = bits;
  bits += c.n_nets;
  c.bit_pend0 = bits;
  c.n_pend_bits = (int)c.in_ports.size();
  bits += c.n_pend_bits;
  c.words = (bits + 63) / 64;
  return c;
}

bool gate_target(const Compiled& c, const Compiled::CGate& g, const uint64_t* key) {
  bool all1 = true, any1 = false;
  for (int k = 0; k < g.in_count; ++k) {
    bool v = get_bit(key, c.gate_in[g.in_first + k]);
    all1 = all1 && v;
    any1 = any1 || v;
  }
  bool cur = get_bit(key, g.out);
  switch (g.kind) {
    case GateKind::AND: return all1;
    case GateKind::OR: return any1;
    case GateKind::NAND: return !all1;
    case GateKind::NOR: return !any1;
    case GateKind::INV: return !any1;
    case GateKind::BUF: return any1;
    case GateKind::C:
      if (all1) return true;
      if (!any1) return false;
      return cur;
  }
  return cur;
}

std::vector<std::pair<NetId, bool>> phase_events(const Compiled& c, uint32_t codeword,
                                                 PhaseKind kind) {
  std::vector<std::pair<NetId, bool>> ev;
  int k = (int)c.in_ports.size();
  for (int i = 0; i < k; ++i) {
    const auto& p = c.in_ports[i];
    bool bit = (codeword >> (k - 1 - i)) & 1u;
    if (p.dual) {
      ev.emplace_back(bit ? p.r1 : p.r0, kind == PhaseKind::valid);
    } else if (bit) {
      ev.emplace_back(p.r0, kind == PhaseKind::valid);
    }
  }
  return ev;
}

bool dual_outputs_at(const Compiled& c, const uint64_t* key, PhaseKind kind) {
  for (const auto& p : c.out_ports) {
    if (!p.dual) continue;
    bool r0 = get_bit(key, p.r0), r1 = get_bit(key, p.r1);
    if (kind == PhaseKind::valid) {
      if (r0 == r1) return false;  // spacer or illegal
    } else {
      if (r0 || r1) return false;
    }
  }
  return true;
}

bool all_outputs_at(const Compiled& c, const uint64_t* key, PhaseKind kind) {
  if (!dual_outputs_at(c, key, kind)) return false;
  for (const auto& p : c.out_ports) {
    if (p.dual) continue;
    if (get_bit(key, p.r0) != (kind == PhaseKind::valid)) return false;
  }
  return true;
}

uint32_t decode_outputs(const Compiled& c, const uint64_t* key) {
  uint32_t w = 0;
  int k = (int)c.out_ports.size();
  for (int i = 0; i < k; ++i) {
    const auto& p = c.out_ports[i];
    bool bit = p.dual ? get_bit(key, p.r1) : get_bit(key, p.r0);
    if (bit) w |= 1u << (k - 1 - i);
  }
  return w;
}

void scan_orphans(const Compiled& c, const uint64_t* key,
                  std::vector<std::pair<OrphanKind, NetId>>& out) {
  for (NetId x = 0; x < c.n_nets; ++x) {
    if (!get_bit(key, c.bit_trans0 + x)) continue;
    if (c.env_acked[x]) continue;  // outputs and cd are acknowledged by the environment
    int first = c.net_edge_first[x], count = c.net_edge_count[x];
    if (count == 0) continue;  // dangling nets are a validation warning
    int unacked = 0;
    for (int e = 0; e < count; ++e)
      if (get_bit(key, c.bit_edges0 + first + e)) ++unacked;
    bool orphan = c.iso[x] ? (unacked == count) : (unacked > 0);
    if (orphan) out.emplace_back(c.is_pi_net[x] ? OrphanKind::wire : OrphanKind::gate, x);
  }
}

bool apply_transition(const Compiled& c, std::vector<uint64_t>& key, NetId net, bool value) {
  set_bit(key.data(), net, value);
  bool retoggle = get_bit(key.data(), c.bit_trans0 + net);
  set_bit(key.data(), c.bit_trans0 + net, true);
  int first = c.net_edge_first[net];
  for (int e = 0; e < c.net_edge_count[net]; ++e)
    set_bit(key.data(), c.bit_edges0 + first + e, true);
  return retoggle;
}

}  // namespace adw::detail
