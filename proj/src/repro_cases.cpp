#include "adw/repro.hpp"

#include <ostream>

#include "adw/report.hpp"
#include "adw/synthesis.hpp"

namespace adw {

namespace {

BooleanFunction exemplar_f() {
  return function_from_spec(4, {1, 2, 3, 5, 6, 7, 9, 10, 11, 13});
}

Netlist fig5() { return drcl_translate(parse_expression("ab+cd"), "Z"); }

Netlist fig7() {
  Netlist n("fig7");
  for (const char* p : {"p", "q", "r", "s", "t"}) n.add_input(p, false);
  n.add_output("N", false);
  n.add_gate("nand5", GateKind::NAND, {"p", "q", "r", "s", "t"}, "N");
  nand_decompose_naive(n, "nand5", 4);
  return n;
}

void print_scenario(std::ostream& out, const Netlist& n, const ScenarioResult& res) {
  out << "trace:\n";
  for (const auto& e : res.trace.events) {
    out << "  " << e.seq << ". " << n.net_display(e.net) << (e.new_value ? "+" : "-") << "  ("
        << (e.source_gate < 0 ? std::string("env") : n.gates()[e.source_gate].id) << ", "
        << phase_to_string(e.phase) << ")\n";
  }
  if (res.orphans.empty()) {
    out << "no orphans\n";
  } else {
    for (const auto& o : res.orphans)
      out << (o.kind == OrphanKind::wire ? "WIRE ORPHAN on " : "GATE ORPHAN on ")
          << n.net_display(o.net) << " in " << phase_to_string(o.phase) << "\n";
  }
}

bool run_fig5_wire(std::ostream& out) {
  auto n = fig5();
  out << "Z = ab + cd, dual-rail mirror; codeword a=b=c=d=0\n";
  out << "a(0), c(0) arrive first; b(0), d(0) only after Z(0) has been produced\n\n";
  Scenario sc;
  sc.codeword = 0b0000;
  sc.phases.push_back({PhaseKind::valid, {{"a.0", "c.0"}, {"b.0", "d.0"}}});
  auto res = run_scenario(n, sc);
  print_scenario(out, n, res);
  bool ok = res.orphans.size() == 2;
  for (const auto& o : res.orphans) {
    ok = ok && o.kind == OrphanKind::wire;
    ok = ok && (n.net_name(o.net) == "b.0" || n.net_name(o.net) == "d.0");
  }
  out << "\nexpected: wire orphans on b(0) and d(0) -> " << (ok ? "reproduced" : "MISSING")
      << "\n";
  return ok;
}

bool run_fig5_gate(std::ostream& out) {
  auto n = fig5();
  out << "Z = ab + cd, dual-rail mirror; codeword a=b=c=d=1\n";
  out << "a(1), b(1) arrive first; Z(1) fires from X(1) alone; c(1), d(1) are late\n\n";
  Scenario sc;
  sc.codeword = 0b1111;
  sc.phases.push_back({PhaseKind::valid, {{"a.1", "b.1"}, {"c.1", "d.1"}}});
  auto res = run_scenario(n, sc);
  print_scenario(out, n, res);
  bool ok = res.orphans.size() == 1 && res.orphans[0].kind == OrphanKind::gate &&
            n.net_name(res.orphans[0].net) == "Y.1";
  out << "\nexpected: gate orphan on Y(1) -> " << (ok ? "reproduced" : "MISSING") << "\n";
  return ok;
}

bool deadlock_case(std::ostream& out, CdVariant variant) {
  bool nor = variant == CdVariant::nor_gates;
  auto n = synthesize_method1(exemplar_f(), variant);
  out << "multi-level dual-rail implementation of F = Sigma(1,2,3,5,6,7,9,10,11,13)\n";
  out << "completion detection with " << (nor ? "NOR" : "OR") << " internal detectors\n";
  out << "one valid phase plus return-to-zero for codeword a=b=c=d=0\n\n";
  auto r = explore(n, EnvSpec::single(0));
  const char* det1 = nor ? "nor1" : "or1";
  const char* det2 = nor ? "nor2" : "or2";
  const DeadlockFinding* pinned = nullptr;
  for (const auto& d : r.deadlocks) {
    if (d.state.phase.kind != PhaseKind::rtz) continue;
    bool match = true;
    for (const char* net : {"cd1", "cd2", "cd3", "cd4"})
      match = match && d.state.net_values[n.net_id(net)] == 0;
    match = match && d.state.net_values[n.net_id(det1)] == (nor ? 0 : 1);
    match = match && d.state.net_values[n.net_id(det2)] == (nor ? 1 : 0);
    match = match && d.state.net_values[n.net_id("D")] == 1;
    if (match) pinned = &d;
  }
  if (!pinned) {
    out << "expected return-to-zero deadlock NOT found\n";
    return false;
  }
  AnalysisReport rep = make_report(n, "method1", r, {Check::deadlock}, std::nullopt);
  rep.deadlocks = {*pinned};
  out << report_to_text(rep, n);
  out << "\nall inputs and outputs are back at spacer, yet one detector input ("
      << n.net_display(n.net_id(nor ? "nor2" : "or1"))
      << ") is stuck high: the C-element can never drive D low, so the cycle "
         "stalls -> reproduced\n";
  return true;
}

bool run_fig7(std::ostream& out) {
  auto n = fig7();
  out << "5-input NAND split into NAND4 + INV + NAND2 (cell limit 4)\n";
  out << "valid phase raises p..t; in the next return-to-zero, t falls first\n\n";
  Scenario sc;
  sc.codeword = 0b11111;
  sc.phases.push_back({PhaseKind::valid, {{"p", "q", "r", "s", "t"}}});
  sc.phases.push_back({PhaseKind::rtz, {{"t"}, {"p", "q", "r", "s"}}});
  auto res = run_scenario(n, sc);
  print_scenario(out, n, res);
  bool ok = res.orphans.size() == 1 && res.orphans[0].kind == OrphanKind::gate &&
            n.net_name(res.orphans[0].net) == "net2";
  out << "\nN rises as soon as t falls; the later transition on net2 is never "
         "acknowledged\nexpected: exactly one gate orphan, on net2 -> "
      << (ok ? "reproduced" : "MISSING") << "\n";
  return ok;
}

bool run_dsop_f(std::ostream& out) {
  auto f = exemplar_f();
  auto on_cover = minimize_cover(f, CoverPolarity::on);
  auto factored = factor_single_kernel(on_cover);
  auto encoded = dual_rail_encode(f, DualRailMode::onoff);
  auto rail_factored = factor_single_kernel(encoded.true_rail);

  out << "ON cover: " << on_cover.to_string() << "\n";
  out << "factored: " << factored.to_string() << "\n";
  out << "true rail: " << rail_factored.to_string() << "\n\n";

  auto verdict = is_dsop(rail_factored);
  bool ok = !verdict.disjoint;
  out << "the factored rail is " << (verdict.disjoint ? "a DSOP (unexpected!)" : "NOT a DSOP");
  if (verdict.witness)
    out << "; witness: " << rail_factored.term_to_string(verdict.witness->first) << " * "
        << rail_factored.term_to_string(verdict.witness->second) << " != 0";
  out << "\n\n";

  auto corrected1 = parse_expression("a0b1c1+b0c1+c0d1");
  auto corrected2 = parse_expression("a0c1+a1b0c1+c0d1");
  for (auto* e : {&corrected1, &corrected2}) {
    bool disjoint = is_dsop(*e).disjoint;
    bool equiv = equivalent(*e, expand_factored(rail_factored));
    ok = ok && disjoint && equiv;
    out << e->to_string() << ": " << (disjoint ? "DSOP" : "not DSOP") << ", "
        << (equiv ? "equivalent to the true rail" : "NOT equivalent") << "\n";
  }
  auto converted = sop_to_dsop(encoded.true_rail);
  bool conv_ok = is_dsop(converted).disjoint && equivalent(converted, encoded.true_rail);
  ok = ok && conv_ok;
  out << "converter output: " << converted.to_string() << " -> "
      << (conv_ok ? "DSOP and equivalent" : "BROKEN") << "\n";
  return ok;
}

bool run_dsop_kernel(std::ostream& out) {
  auto e = parse_expression("c(a+b)+dc'");
  auto flat = expand_factored(e);
  out << "f = c(a + b) + dc'\n";
  out << "expanded: " << flat.to_string() << "\n";
  auto verdict = is_dsop(e);
  bool ok = !verdict.disjoint && verdict.witness;
  if (verdict.witness)
    out << "NOT a DSOP; witness: " << flat.term_to_string(verdict.witness->first) << " * "
        << flat.term_to_string(verdict.witness->second) << " != 0\n";
  ok = ok && flat.term_to_string(verdict.witness->first) == "ac" &&
       flat.term_to_string(verdict.witness->second) == "bc";
  auto converted = sop_to_dsop(e);
  bool conv_ok = is_dsop(converted).disjoint && equivalent(converted, flat);
  ok = ok && conv_ok;
  out << "converted: " << converted.to_string() << " -> "
      << (conv_ok ? "DSOP, equivalent" : "BROKEN") << "\n";
  return ok;
}

}  // namespace

const std::vector<ReproCase>& repro_cases() {
  static const std::vector<ReproCase> cases = {
      {"fig5-wire", "DRCL wire orphans under late b(0)/d(0) arrival", run_fig5_wire},
      {"fig5-gate", "DRCL gate orphan on Y(1) under late c(1)/d(1) arrival", run_fig5_gate},
      {"fig6-or", "return-to-zero deadlock, OR internal detectors",
       [](std::ostream& out) { return deadlock_case(out, CdVariant::or_gates); }},
      {"fig6-nor", "return-to-zero deadlock, NOR internal detectors",
       [](std::ostream& out) { return deadlock_case(out, CdVariant::nor_gates); }},
      {"fig7", "gate orphan from naive NAND decomposition", run_fig7},
      {"dsop-f", "corrected disjoint covers for the exemplar function", run_dsop_f},
      {"dsop-kernel", "kernel counterexample f = c(a+b) + dc'", run_dsop_kernel},
  };
  return cases;
}

const ReproCase* find_repro_case(const std::string& id) {
  for (const auto& c : repro_cases())
    if (c.id == id) return &c;
  return nullptr;
}

}  // namespace adw
