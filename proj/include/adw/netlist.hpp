#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "adw/boolean.hpp"

// Gate-level circuit IR for dual-rail self-timed logic: plain Boolean gates
// plus the Muller C-element, dual-rail or single-wire port bindings, an
// isochronic-fork annotation on source nets, and a line-oriented text format.

namespace adw {

enum class GateKind : uint8_t { AND, OR, NAND, NOR, INV, BUF, C };

const char* gate_kind_name(GateKind k);
std::optional<GateKind> gate_kind_from_name(const std::string& s);

using NetId = int32_t;

struct Gate {
  std::string id;
  GateKind kind = GateKind::BUF;
  std::vector<NetId> inputs;
  NetId output = -1;
  // Reset value; meaningful for C-elements only.
  bool init_out = false;
};

struct Port {
  std::string name;
  bool dual_rail = true;
  NetId rail0 = -1;  // the sole net for single-wire ports
  NetId rail1 = -1;
};

struct Diagnostic {
  enum class Severity { error, warning } severity;
  std::string rule;
  std::string subject;
  std::string message;
};

class Netlist {
 public:
  Netlist() = default;
  explicit Netlist(std::string name) : name_(std::move(name)) {}

  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }

  // --- nets ---
  NetId add_net(const std::string& name);           // get-or-create
  NetId net_id(const std::string& name) const;      // -1 when absent
  const std::string& net_name(NetId id) const { return net_names_[id]; }
  int net_count() const { return (int)net_names_.size(); }

  /// Walkthrough-style display name: rail nets a.0 / a.1 print as a(0) / a(1).
  std::string net_display(NetId id) const;

  // --- ports ---
  const Port& add_input(const std::string& name, bool dual_rail);
  const Port& add_output(const std::string& name, bool dual_rail);
  const std::vector<Port>& inputs() const { return inputs_; }
  const std::vector<Port>& outputs() const { return outputs_; }

  // --- gates ---
  Gate& add_gate(const std::string& id, GateKind kind, const std::vector<std::string>& input_nets,
                 const std::string& output_net, bool init_out = false);
  const std::vector<Gate>& gates() const { return gates_; }
  std::vector<Gate>& gates() { return gates_; }
  const Gate* find_gate(const std::string& id) const;

  void set_cd_output(const std::string& net);
  NetId cd_output() const { return cd_output_; }

  void mark_isochronic(const std::string& net);
  void clear_isochronic() { isochronic_.clear(); }
  bool is_isochronic(NetId id) const { return isochronic_.count(id) > 0; }
  const std::set<NetId>& isochronic() const { return isochronic_; }

  /// Index of the gate driving a net, or -1.
  int driver_of(NetId id) const;

  /// Indices of all gates reading the net; two or more identify a fork.
  std::vector<int> fanout(NetId id) const;

  bool is_input_net(NetId id) const;
  bool is_output_net(NetId id) const;

  /// All structural rules: single driver, acyclic wiring, fan-in bounds per
  /// gate kind, cd output driven by a C-element, undriven internal nets, and
  /// dangling-net warnings.  Empty (of errors) means the explorer accepts it.
  std::vector<Diagnostic> validate() const;

  std::string serialize() const;
  static Netlist parse(const std::string& text);
  static Netlist parse_file(const std::string& path);

 private:
  std::string name_ = "circuit";
  std::vector<std::string> net_names_;
  std::unordered_map<std::string, NetId> net_index_;
  std::vector<Gate> gates_;
  std::vector<Port> inputs_;
  std::vector<Port> outputs_;
  NetId cd_output_ = -1;
  std::set<NetId> isochronic_;
};

bool has_errors(const std::vector<Diagnostic>& diags);

/// Structural equality by names: ports, gates (id, kind, ordered inputs,
/// output, init), cd output, and isochronic annotations.
bool structurally_equal(const Netlist& a, const Netlist& b);

}  // namespace adw
