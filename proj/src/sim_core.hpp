#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "adw/analysis.hpp"
#include "adw/netlist.hpp"

// Internal simulation core shared by the explorer and the scenario runner:
// a flattened circuit with acknowledgment edges, plus the bit-packed state
// representation (net values | ack edges | per-phase transition flags |
// pending environment events | phase index word).

namespace adw::detail {

struct Compiled {
  const Netlist* nl = nullptr;
  int n_nets = 0;

  struct CGate {
    GateKind kind;
    int in_first;
    int in_count;
    NetId out;
    bool init;
  };
  std::vector<CGate> gates;
  std::vector<NetId> gate_in;

  // One acknowledgment edge per (net, reading gate) pair, numbered so a
  // net's edges are contiguous.
  int n_edges = 0;
  std::vector<int> net_edge_first, net_edge_count;
  std::vector<int> gate_ack_first, gate_ack_count;
  std::vector<int> gate_ack_edges;

  std::vector<uint8_t> iso;
  std::vector<uint8_t> is_pi_net;
  std::vector<uint8_t> env_acked;  // output-port nets and the cd output

  struct CPort {
    NetId r0, r1;
    bool dual;
  };
  std::vector<CPort> in_ports, out_ports;
  NetId cd = -1;

  std::vector<uint8_t> spacer;

  int bit_edges0 = 0, bit_trans0 = 0, bit_pend0 = 0;
  int n_pend_bits = 0;
  int words = 0;  // data words; one extra word carries the phase index
};

Compiled compile(const Netlist& nl);

inline bool get_bit(const uint64_t* w, int pos) { return (w[pos >> 6] >> (pos & 63)) & 1u; }
inline void set_bit(uint64_t* w, int pos, bool v) {
  uint64_t mask = 1ull << (pos & 63);
  if (v) {
    w[pos >> 6] |= mask;
  } else {
    w[pos >> 6] &= ~mask;
  }
}

bool gate_target(const Compiled& c, const Compiled::CGate& g, const uint64_t* key);

/// Environment events for one phase, in port order.
std::vector<std::pair<NetId, bool>> phase_events(const Compiled& c, uint32_t codeword,
                                                 PhaseKind kind);

bool dual_outputs_at(const Compiled& c, const uint64_t* key, PhaseKind kind);
bool all_outputs_at(const Compiled& c, const uint64_t* key, PhaseKind kind);
uint32_t decode_outputs(const Compiled& c, const uint64_t* key);

void scan_orphans(const Compiled& c, const uint64_t* key,
                  std::vector<std::pair<OrphanKind, NetId>>& out);

/// Applies one transition in place; returns whether the net had already
/// transitioned this phase.
bool apply_transition(const Compiled& c, std::vector<uint64_t>& key, NetId net, bool value);

}  // namespace adw::detail
