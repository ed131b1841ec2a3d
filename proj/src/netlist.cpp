#include "adw/netlist.hpp"

#include <algorithm>

namespace adw {

const char* gate_kind_name(GateKind k) {
  switch (k) {
    case GateKind::AND: return "AND";
    case GateKind::OR: return "OR";
    case GateKind::NAND: return "NAND";
    case GateKind::NOR: return "NOR";
    case GateKind::INV: return "INV";
    case GateKind::BUF: return "BUF";
    case GateKind::C: return "C";
  }
  return "?";
}

std::optional<GateKind> gate_kind_from_name(const std::string& s) {
  if (s == "AND") return GateKind::AND;
  if (s == "OR") return GateKind::OR;
  if (s == "NAND") return GateKind::NAND;
  if (s == "NOR") return GateKind::NOR;
  if (s == "INV") return GateKind::INV;
  if (s == "BUF") return GateKind::BUF;
  if (s == "C") return GateKind::C;
  return std::nullopt;
}

NetId Netlist::add_net(const std::string& name) {
  auto it = net_index_.find(name);
  if (it != net_index_.end()) return it->second;
  NetId id = (NetId)net_names_.size();
  net_names_.push_back(name);
  net_index_.emplace(name, id);
  return id;
}

NetId Netlist::net_id(const std::string& name) const {
  auto it = net_index_.find(name);
  return it == net_index_.end() ? -1 : it->second;
}

std::string Netlist::net_display(NetId id) const {
  const std::string& n = net_names_[id];
  auto dot = n.rfind('.');
  if (dot != std::string::npos && dot + 2 == n.size() && (n[dot + 1] == '0' || n[dot + 1] == '1'))
    return n.substr(0, dot) + "(" + n.substr(dot + 1) + ")";
  return n;
}

const Port& Netlist::add_input(const std::string& name, bool dual_rail) {
  Port p;
  p.name = name;
  p.dual_rail = dual_rail;
  if (dual_rail) {
    p.rail0 = add_net(name + ".0");
    p.rail1 = add_net(name + ".1");
  } else {
    p.rail0 = add_net(name);
  }
  inputs_.push_back(p);
  return inputs_.back();
}

const Port& Netlist::add_output(const std::string& name, bool dual_rail) {
  Port p;
  p.name = name;
  p.dual_rail = dual_rail;
  if (dual_rail) {
    p.rail0 = add_net(name + ".0");
    p.rail1 = add_net(name + ".1");
  } else {
    p.rail0 = add_net(name);
  }
  outputs_.push_back(p);
  return outputs_.back();
}

Gate& Netlist::add_gate(const std::string& id, GateKind kind,
                        const std::vector<std::string>& input_nets,
                        const std::string& output_net, bool init_out) {
  Gate g;
  g.id = id;
  g.kind = kind;
  for (const auto& n : input_nets) g.inputs.push_back(add_net(n));
  g.output = add_net(output_net);
  g.init_out = init_out;
  gates_.push_back(std::move(g));
  return gates_.back();
}

const Gate* Netlist::find_gate(const std::string& id) const {
  for (const auto& g : gates_)
    if (g.id == id) return &g;
  return nullptr;
}

void Netlist::set_cd_output(const std::string& net) { cd_output_ = add_net(net); }

void Netlist::mark_isochronic(const std::string& net) {
  NetId id = net_id(net);
  if (id < 0) throw std::invalid_argument("unknown net '" + net + "'");
  isochronic_.insert(id);
}

int Netlist::driver_of(NetId id) const {
  for (size_t i = 0; i < gates_.size(); ++i)
    if (gates_[i].output == id) return (int)i;
  return -1;
}

std::vector<int> Netlist::fanout(NetId id) const {
  if (id < 0 || id >= (NetId)net_names_.size()) throw std::invalid_argument("unknown net");
  std::vector<int> out;
  for (size_t i = 0; i < gates_.size(); ++i) {
    const auto& g = gates_[i];
    if (std::find(g.inputs.begin(), g.inputs.end(), id) != g.inputs.end()) out.push_back((int)i);
  }
  return out;
}

bool Netlist::is_input_net(NetId id) const {
  for (const auto& p : inputs_)
    if (p.rail0 == id || p.rail1 == id) return true;
  return false;
}

bool Netlist::is_output_net(NetId id) const {
  for (const auto& p : outputs_)
    if (p.rail0 == id || p.rail1 == id) return true;
  return false;
}

bool has_errors(const std::vector<Diagnostic>& diags) {
  return std::any_of(diags.begin(), diags.end(),
                     [](const Diagnostic& d) { return d.severity == Diagnostic::Severity::error; });
}

std::vector<Diagnostic> Netlist::validate() const {
  std::vector<Diagnostic> diags;
  auto error = [&](std::string rule, std::string subject, std::string msg) {
    diags.push_back({Diagnostic::Severity::error, std::move(rule), std::move(subject), std::move(msg)});
  };
  auto warn = [&](std::string rule, std::string subject, std::string msg) {
    diags.push_back({Diagnostic::Severity::warning, std::move(rule), std::move(subject), std::move(msg)});
  };

  // Fan-in bounds per kind.
  for (const auto& g : gates_) {
    size_t n = g.inputs.size();
    bool unary = g.kind == GateKind::INV || g.kind == GateKind::BUF;
    if (unary && n != 1)
      error("fanin", g.id, std::string(gate_kind_name(g.kind)) + " requires exactly 1 input");
    if (!unary && n < 2)
      error("fanin", g.id, std::string(gate_kind_name(g.kind)) + " requires fan-in >= 2");
  }

  // Single driver; primary inputs have no driver.
  std::vector<int> drivers(net_names_.size(), -1);
  for (size_t i = 0; i < gates_.size(); ++i) {
    NetId out = gates_[i].output;
    if (drivers[out] >= 0)
      error("multi-driver", net_names_[out],
            "driven by both " + gates_[drivers[out]].id + " and " + gates_[i].id);
    drivers[out] = (int)i;
  }
  for (const auto& p : inputs_) {
    for (NetId id : {p.rail0, p.rail1}) {
      if (id >= 0 && drivers[id] >= 0)
        error("input-driven", net_names_[id], "primary input net has a driver");
    }
  }

  // Non-input nets need a driver.
  for (NetId id = 0; id < (NetId)net_names_.size(); ++id) {
    if (drivers[id] < 0 && !is_input_net(id))
      warn("undriven", net_names_[id], "net has no driver and is not a primary input");
  }

  // Wiring cycles (all the supported circuits are feed-forward; state lives
  // in C-elements, not loops).
  {
    std::vector<int> mark(gates_.size(), 0);  // 0 unvisited, 1 on stack, 2 done
    std::vector<int> stack, path;
    for (size_t root = 0; root < gates_.size(); ++root) {
      if (mark[root]) continue;
      stack.push_back((int)root);
      while (!stack.empty()) {
        int gi = stack.back();
        if (mark[gi] == 0) {
          mark[gi] = 1;
          path.push_back(gi);
          for (NetId in : gates_[gi].inputs) {
            int d = drivers[in];
            if (d < 0) continue;
            if (mark[d] == 1) {
              std::string cycle;
              auto it = std::find(path.begin(), path.end(), d);
              for (; it != path.end(); ++it) cycle += gates_[*it].id + " -> ";
              cycle += gates_[d].id;
              error("cycle", gates_[d].id, "wiring cycle: " + cycle);
            } else if (mark[d] == 0) {
              stack.push_back(d);
            }
          }
        } else {
          stack.pop_back();
          if (mark[gi] == 1) {
            mark[gi] = 2;
            path.pop_back();
          }
        }
      }
    }
  }

  // cd output, when present, must be driven by a C-element.
  if (cd_output_ >= 0) {
    int d = drivers[cd_output_];
    if (d < 0 || gates_[d].kind != GateKind::C)
      error("cd-driver", net_names_[cd_output_], "cd output is not driven by a C-element");
  }

  // Dangling nets: read by nothing and not an output or the cd output.
  for (NetId id = 0; id < (NetId)net_names_.size(); ++id) {
    if (is_output_net(id) || id == cd_output_) continue;
    if (fanout(id).empty()) warn("dangling", net_names_[id], "net is read by no gate");
  }

  for (NetId id : isochronic_) {
    if (id < 0 || id >= (NetId)net_names_.size())
      error("isochronic", std::to_string(id), "isochronic annotation on unknown net");
  }

  return diags;
}

bool structurally_equal(const Netlist& a, const Netlist& b) {
  if (a.name() != b.name()) return false;
  auto ports_equal = [&](const std::vector<Port>& pa, const std::vector<Port>& pb) {
    if (pa.size() != pb.size()) return false;
    for (size_t i = 0; i < pa.size(); ++i)
      if (pa[i].name != pb[i].name || pa[i].dual_rail != pb[i].dual_rail) return false;
    return true;
  };
  if (!ports_equal(a.inputs(), b.inputs()) || !ports_equal(a.outputs(), b.outputs())) return false;
  if (a.gates().size() != b.gates().size()) return false;
  for (size_t i = 0; i < a.gates().size(); ++i) {
    const Gate& ga = a.gates()[i];
    const Gate& gb = b.gates()[i];
    if (ga.id != gb.id || ga.kind != gb.kind || ga.init_out != gb.init_out) return false;
    if (ga.inputs.size() != gb.inputs.size()) return false;
    for (size_t k = 0; k < ga.inputs.size(); ++k)
      if (a.net_name(ga.inputs[k]) != b.net_name(gb.inputs[k])) return false;
    if (a.net_name(ga.output) != b.net_name(gb.output)) return false;
  }
  auto cd_name = [](const Netlist& n) {
    return n.cd_output() < 0 ? std::string() : n.net_name(n.cd_output());
  };
  if (cd_name(a) != cd_name(b)) return false;
  std::set<std::string> ia, ib;
  for (NetId id : a.isochronic()) ia.insert(a.net_name(id));
  for (NetId id : b.isochronic()) ib.insert(b.net_name(id));
  return ia == ib;
}

}  // namespace adw
