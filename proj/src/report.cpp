#include "adw/report.hpp"

#include <algorithm>
#include <json.hpp>
#include <sstream>

namespace adw {

using nlohmann::json;

std::optional<Check> check_from_name(const std::string& s) {
  if (s == "deadlock") return Check::deadlock;
  if (s == "orphans") return Check::orphans;
  if (s == "mcc") return Check::mcc;
  if (s == "classify") return Check::classify;
  return std::nullopt;
}

const char* check_name(Check c) {
  switch (c) {
    case Check::deadlock: return "deadlock";
    case Check::orphans: return "orphans";
    case Check::mcc: return "mcc";
    case Check::classify: return "classify";
  }
  return "?";
}

AnalysisReport make_report(const Netlist& n, const std::string& method,
                           const ReachabilityResult& r, const std::vector<Check>& checks,
                           std::optional<IndicationClass> classification) {
  AnalysisReport rep;
  rep.circuit = n.name();
  rep.method = method;
  rep.checks = checks;
  rep.stats = r.stats;
  rep.classification = classification;
  auto wants = [&](Check c) {
    return std::find(checks.begin(), checks.end(), c) != checks.end();
  };
  if (wants(Check::deadlock)) rep.deadlocks = r.deadlocks;
  if (wants(Check::orphans)) rep.orphans = r.orphans;
  if (wants(Check::mcc)) rep.mcc = r.mcc;
  return rep;
}

namespace {

json phase_json(const PhaseId& p) {
  return json{{"codeword_index", p.codeword_index},
              {"kind", p.kind == PhaseKind::valid ? "valid" : "rtz"}};
}

json trace_json(const Trace& t, const Netlist& n) {
  json events = json::array();
  for (const auto& e : t.events) {
    events.push_back(json{{"seq", e.seq},
                          {"net", n.net_name(e.net)},
                          {"value", e.new_value ? 1 : 0},
                          {"source", e.source_gate < 0 ? std::string("env")
                                                       : n.gates()[e.source_gate].id},
                          {"phase", phase_json(e.phase)}});
  }
  return events;
}

json state_json(const Netlist& n, const std::vector<uint8_t>& values) {
  json state = json::object();
  for (NetId x = 0; x < (NetId)values.size(); ++x) state[n.net_name(x)] = values[x] ? 1 : 0;
  return state;
}

std::string event_text(const Netlist& n, const TransitionEvent& e) {
  std::ostringstream ss;
  ss << e.seq << ". " << n.net_display(e.net) << (e.new_value ? "+" : "-") << "  (";
  ss << (e.source_gate < 0 ? "env" : n.gates()[e.source_gate].id);
  ss << ", " << phase_to_string(e.phase) << ")";
  return ss.str();
}

void trace_text(std::ostringstream& out, const Netlist& n, const Trace& t,
                const std::string& indent) {
  for (const auto& e : t.events) out << indent << event_text(n, e) << "\n";
}

// The completion-detector joint, when present: its inputs pinpoint why D is
// stuck, in the style of the walkthroughs.
void cd_inputs_text(std::ostringstream& out, const Netlist& n,
                    const std::vector<uint8_t>& values) {
  if (n.cd_output() < 0) return;
  int d = n.driver_of(n.cd_output());
  if (d < 0) return;
  out << "  C-element inputs:";
  for (NetId in : n.gates()[d].inputs)
    out << " " << n.net_display(in) << "=" << (values[in] ? 1 : 0);
  out << "\n  " << n.net_display(n.cd_output()) << " held at "
      << (values[n.cd_output()] ? 1 : 0) << "\n";
}

}  // namespace

std::string report_to_json(const AnalysisReport& rep, const Netlist& n, int indent) {
  json j;
  j["circuit"] = rep.circuit;
  j["method"] = rep.method;
  json checks = json::array();
  for (Check c : rep.checks) checks.push_back(check_name(c));
  j["checks"] = checks;

  j["deadlocks"] = json::array();
  for (const auto& d : rep.deadlocks) {
    j["deadlocks"].push_back(json{{"phase", phase_json(d.state.phase)},
                                  {"state", state_json(n, d.state.net_values)},
                                  {"trace", trace_json(d.trace, n)}});
  }
  j["orphans"] = json::array();
  for (const auto& o : rep.orphans) {
    j["orphans"].push_back(json{{"kind", o.kind == OrphanKind::wire ? "wire" : "gate"},
                                {"net", n.net_name(o.net)},
                                {"phase", phase_json(o.phase)},
                                {"trace", trace_json(o.trace, n)}});
  }
  j["mcc"] = json::array();
  for (const auto& m : rep.mcc) {
    j["mcc"].push_back(json{{"kind", m.kind == MccFinding::Kind::nondisjoint_excitation
                                         ? "nondisjoint_excitation"
                                         : "nonmonotonic"},
                            {"gate", m.gate_id},
                            {"net", m.net >= 0 ? n.net_name(m.net) : ""},
                            {"phase", phase_json(m.phase)},
                            {"trace", trace_json(m.trace, n)}});
  }
  j["classification"] =
      rep.classification ? json(indication_class_name(*rep.classification)) : json(nullptr);
  j["stats"] = json{{"states", rep.stats.states},
                    {"transitions", rep.stats.transitions},
                    {"depth", rep.stats.depth},
                    {"state_limit_hit", rep.stats.state_limit_hit},
                    {"depth_limit_hit", rep.stats.depth_limit_hit}};
  return j.dump(indent) + "\n";
}

std::string report_to_text(const AnalysisReport& rep, const Netlist& n) {
  std::ostringstream out;
  out << "circuit " << rep.circuit << " (" << rep.method << ")\n";
  out << "explored " << rep.stats.states << " states, " << rep.stats.transitions
      << " transitions\n";
  if (rep.limits_hit()) out << "WARNING: exploration limits exceeded; results are partial\n";

  for (const auto& d : rep.deadlocks) {
    out << "\nDEADLOCK in " << phase_to_string(d.state.phase) << "\n";
    out << "  quiescent, but the handshake phase cannot complete\n";
    cd_inputs_text(out, n, d.state.net_values);
    out << "  state:";
    for (NetId x = 0; x < (NetId)d.state.net_values.size(); ++x)
      out << " " << n.net_display(x) << "=" << (d.state.net_values[x] ? 1 : 0);
    out << "\n  trace (" << d.trace.events.size() << " events):\n";
    trace_text(out, n, d.trace, "    ");
  }

  for (const auto& o : rep.orphans) {
    out << "\n" << (o.kind == OrphanKind::wire ? "WIRE ORPHAN" : "GATE ORPHAN") << " on "
        << n.net_display(o.net) << " in " << phase_to_string(o.phase) << "\n";
    out << "  the transition on " << n.net_display(o.net)
        << " is never acknowledged by a fanout firing within its phase\n";
    out << "  trace (" << o.trace.events.size() << " events):\n";
    trace_text(out, n, o.trace, "    ");
  }

  for (const auto& m : rep.mcc) {
    if (m.kind == MccFinding::Kind::nondisjoint_excitation) {
      out << "\nMCC VIOLATION at gate " << m.gate_id << " in " << phase_to_string(m.phase)
          << "\n  two or more inputs of the join are high: the driving products are not disjoint\n";
    } else {
      out << "\nNON-MONOTONE NET " << n.net_display(m.net) << " in " << phase_to_string(m.phase)
          << "\n  the net transitions more than once within a single phase\n";
    }
    out << "  trace (" << m.trace.events.size() << " events):\n";
    trace_text(out, n, m.trace, "    ");
  }

  if (rep.classification)
    out << "\nindication class: " << indication_class_name(*rep.classification) << "\n";

  if (!rep.has_findings() && !rep.classification) out << "\nno findings\n";
  return out.str();
}

}  // namespace adw
