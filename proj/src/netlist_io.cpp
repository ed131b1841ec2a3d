#include <fstream>
#include <sstream>

#include "adw/netlist.hpp"

namespace adw {

std::string Netlist::serialize() const {
  std::ostringstream out;
  out << "circuit " << name_ << "\n";
  for (const auto& p : inputs_) out << "input " << p.name << (p.dual_rail ? ":dualrail" : ":wire") << "\n";
  for (const auto& p : outputs_) out << "output " << p.name << (p.dual_rail ? ":dualrail" : ":wire") << "\n";
  if (cd_output_ >= 0) out << "cdout " << net_names_[cd_output_] << "\n";
  for (const auto& g : gates_) {
    if (g.kind == GateKind::C) {
      out << "cgate " << g.id << " C";
    } else {
      out << "gate " << g.id << " " << gate_kind_name(g.kind);
    }
    for (NetId in : g.inputs) out << " " << net_names_[in];
    out << " -> " << net_names_[g.output];
    if (g.kind == GateKind::C) out << " init=" << (g.init_out ? 1 : 0);
    out << "\n";
  }
  for (NetId id : isochronic_) out << "isochronic " << net_names_[id] << "\n";
  return out.str();
}

Netlist Netlist::parse(const std::string& text) {
  Netlist n;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  std::vector<std::pair<int, std::string>> pending_isochronic;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    std::string t;
    while (ls >> t) tok.push_back(t);
    if (tok.empty()) continue;
    const std::string& key = tok[0];

    if (key == "circuit") {
      if (tok.size() != 2) throw ParseError(lineno, "expected: circuit <name>");
      n.set_name(tok[1]);
    } else if (key == "input" || key == "output") {
      if (tok.size() != 2) throw ParseError(lineno, "expected: " + key + " <name>:<dualrail|wire>");
      auto colon = tok[1].find(':');
      if (colon == std::string::npos) throw ParseError(lineno, "missing ':' in port declaration");
      std::string name = tok[1].substr(0, colon);
      std::string kind = tok[1].substr(colon + 1);
      bool dual;
      if (kind == "dualrail") {
        dual = true;
      } else if (kind == "wire") {
        dual = false;
      } else {
        throw ParseError(lineno, "port kind must be dualrail or wire, got '" + kind + "'");
      }
      if (key == "input") {
        n.add_input(name, dual);
      } else {
        n.add_output(name, dual);
      }
    } else if (key == "cdout") {
      if (tok.size() != 2) throw ParseError(lineno, "expected: cdout <net>");
      n.set_cd_output(tok[1]);
    } else if (key == "gate" || key == "cgate") {
      // gate <id> <KIND> <in...> -> <out> [init=0|1]
      if (tok.size() < 5) throw ParseError(lineno, "truncated gate statement");
      std::string id = tok[1];
      auto kind = gate_kind_from_name(tok[2]);
      if (!kind) throw ParseError(lineno, "unknown gate kind '" + tok[2] + "'");
      if (key == "cgate" && *kind != GateKind::C)
        throw ParseError(lineno, "cgate statements must use kind C");
      size_t arrow = 0;
      for (size_t i = 3; i < tok.size(); ++i)
        if (tok[i] == "->") arrow = i;
      if (arrow == 0 || arrow + 1 >= tok.size()) throw ParseError(lineno, "missing '-> <out>'");
      std::vector<std::string> ins(tok.begin() + 3, tok.begin() + arrow);
      if (ins.empty()) throw ParseError(lineno, "gate has no inputs");
      std::string out_net = tok[arrow + 1];
      bool init = false;
      for (size_t i = arrow + 2; i < tok.size(); ++i) {
        if (tok[i] == "init=0" || tok[i] == "init=1") {
          if (*kind != GateKind::C)
            throw ParseError(lineno, "init= applies only to C-elements");
          init = tok[i] == "init=1";
        } else {
          throw ParseError(lineno, "unexpected token '" + tok[i] + "'");
        }
      }
      n.add_gate(id, *kind, ins, out_net, init);
    } else if (key == "isochronic") {
      if (tok.size() != 2) throw ParseError(lineno, "expected: isochronic <net>");
      pending_isochronic.emplace_back(lineno, tok[1]);
    } else {
      throw ParseError(lineno, "unknown statement '" + key + "'");
    }
  }
  for (const auto& [ln, net] : pending_isochronic) {
    try {
      n.mark_isochronic(net);
    } catch (const std::invalid_argument& e) {
      throw ParseError(ln, e.what());
    }
  }
  return n;
}

Netlist Netlist::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

}  // namespace adw
