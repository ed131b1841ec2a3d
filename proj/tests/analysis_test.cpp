#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "adw/analysis.hpp"
#include "adw/synthesis.hpp"

using namespace adw;

namespace {

BooleanFunction exemplar_f() {
  return function_from_spec(4, {1, 2, 3, 5, 6, 7, 9, 10, 11, 13});
}

bool net_value(const Netlist& n, const StateSnapshot& s, const std::string& name) {
  NetId id = n.net_id(name);
  REQUIRE(id >= 0);
  return s.net_values[id];
}

Netlist fig5_netlist() { return drcl_translate(parse_expression("ab+cd"), "Z"); }

Netlist fig7_netlist() {
  Netlist n("fig7");
  for (const char* p : {"p", "q", "r", "s", "t"}) n.add_input(p, false);
  n.add_output("N", false);
  n.add_gate("big", GateKind::NAND, {"p", "q", "r", "s", "t"}, "N");
  nand_decompose_naive(n, "big", 4);
  return n;
}

Netlist c_element_joint() {
  Netlist n("cjoint");
  n.add_input("t", false);
  n.add_input("u", false);
  n.add_output("o", false);
  n.add_gate("c1", GateKind::C, {"t", "u"}, "o", false);
  return n;
}

std::string orphan_brief(const Netlist& n, const std::vector<OrphanFinding>& orphans) {
  std::ostringstream ss;
  for (const auto& o : orphans)
    ss << (o.kind == OrphanKind::wire ? "wire:" : "gate:") << n.net_name(o.net) << " ";
  return ss.str();
}

// Condensed, order-stable view of a result, for determinism comparisons.
std::string summarize(const Netlist& n, const ReachabilityResult& r) {
  std::ostringstream ss;
  ss << "states=" << r.stats.states << " deadlocks=" << r.deadlocks.size() << "\n";
  for (const auto& d : r.deadlocks) {
    ss << "deadlock " << phase_to_string(d.state.phase) << ":";
    for (NetId x = 0; x < (NetId)d.state.net_values.size(); ++x)
      ss << " " << n.net_name(x) << "=" << (int)d.state.net_values[x];
    ss << "\n";
  }
  ss << "orphans: " << orphan_brief(n, r.orphans) << "\n";
  for (const auto& m : r.mcc)
    ss << "mcc " << (m.kind == MccFinding::Kind::nondisjoint_excitation ? "a" : "b") << " "
       << m.gate_id << " " << phase_to_string(m.phase) << "\n";
  ss << "strongv=" << r.strong_violated << " weakv=" << r.weak_violated << "\n";
  for (const auto& [cw, outs] : r.valid_outputs) {
    ss << "cw" << cw << ":";
    for (uint32_t o : outs) ss << " " << o;
    ss << "\n";
  }
  return ss.str();
}

}  // namespace

TEST_CASE("enabled_transitions: C-element holds on mixed inputs") {
  auto n = c_element_joint();
  auto s = spacer_state(n);
  s.net_values[n.net_id("t")] = 1;  // inputs (1, 0), output 0
  CHECK(enabled_transitions(n, s).empty());

  s.net_values[n.net_id("u")] = 1;  // all ones: output must rise
  auto ev = enabled_transitions(n, s);
  REQUIRE(ev.size() == 1);
  CHECK(ev[0].net == n.net_id("o"));
  CHECK(ev[0].new_value == true);
}

TEST_CASE("enabled_transitions: excited NAND and pending env events") {
  Netlist n("nand2");
  n.add_input("a", false);
  n.add_input("b", false);
  n.add_output("z", false);
  n.add_gate("g", GateKind::NAND, {"a", "b"}, "z");
  auto s = spacer_state(n);
  CHECK(net_value(n, {s.net_values, s.phase}, "z") == true);
  s.net_values[n.net_id("a")] = 1;
  s.net_values[n.net_id("b")] = 1;
  auto ev = enabled_transitions(n, s);
  REQUIRE(ev.size() == 1);
  CHECK(ev[0].new_value == false);

  s.pending_env = {n.net_id("a")};
  CHECK(enabled_transitions(n, s).size() == 2);
}

TEST_CASE("enabled_transitions: the stuck completion detector state is quiescent") {
  auto n = synthesize_method1(exemplar_f(), CdVariant::or_gates);
  auto r = explore(n, EnvSpec::single(0));
  REQUIRE_FALSE(r.deadlocks.empty());
  CircuitState s;
  s.net_values = r.deadlocks[0].state.net_values;
  s.phase = r.deadlocks[0].state.phase;
  CHECK(enabled_transitions(n, s).empty());

  // A rail of b forks into the function block and the k11 input detector.
  auto fo = n.fanout(n.net_id("b.1"));
  REQUIRE(fo.size() == 2);
  std::set<std::string> ids;
  for (int gi : fo) ids.insert(n.gates()[gi].id);
  CHECK(ids.count("k11") == 1);
}

TEST_CASE("explore: DIMS of a 2-input AND has no deadlock over all codewords") {
  auto n = dims_synthesize(function_from_spec(2, {3}));
  auto r = explore(n, EnvSpec::all_codewords(n));
  CHECK(r.deadlocks.empty());
  CHECK(r.all_phases_completed());
}

TEST_CASE("explore: empty netlist yields a single quiescent state") {
  Netlist n("empty");
  auto r = explore(n, EnvSpec{});
  CHECK(r.stats.states == 1);
  CHECK(r.deadlocks.empty());
}

TEST_CASE("explore: full reachability of the decomposed NAND5 stays small") {
  auto n = fig7_netlist();
  auto r = explore(n, EnvSpec::single(0b11111));
  CHECK(r.stats.states < 10000);
  CHECK(r.deadlocks.empty());
  CHECK(r.all_phases_completed());
  // Among all interleavings, the net2 gate orphan of the narrated ordering
  // must be found.
  bool net2_orphan = false;
  for (const auto& o : r.orphans)
    if (o.kind == OrphanKind::gate && n.net_name(o.net) == "net2" &&
        o.phase.kind == PhaseKind::rtz)
      net2_orphan = true;
  CHECK(net2_orphan);
}

TEST_CASE("deadlock reproduction: OR-gate completion detector variant") {
  auto f = exemplar_f();
  auto n = synthesize_method1(f, CdVariant::or_gates);
  for (uint32_t cw : {0u, 10u, 5u}) {
    auto r = explore(n, EnvSpec::single(cw));
    CHECK(r.stats.states < 1000000);
    REQUIRE_FALSE(r.deadlocks.empty());
    // The valid phase completes (D reaches 1), the return-to-zero cannot.
    CHECK(r.completed_phases.count(0) == 1);
    CHECK(r.completed_phases.count(1) == 0);
    for (const auto& d : r.deadlocks) {
      CHECK(d.state.phase.kind == PhaseKind::rtz);
      CHECK(net_value(n, d.state, "cd1") == false);
      CHECK(net_value(n, d.state, "cd2") == false);
      CHECK(net_value(n, d.state, "cd3") == false);
      CHECK(net_value(n, d.state, "cd4") == false);
      CHECK(net_value(n, d.state, "or2") == false);
      CHECK(net_value(n, d.state, "or1") == true);
      CHECK(net_value(n, d.state, "D") == true);
    }
    // The stranded detector transitions show up as gate orphans.
    bool cd_orphan = false;
    for (const auto& o : r.orphans)
      if (o.kind == OrphanKind::gate && n.net_name(o.net).starts_with("cd")) cd_orphan = true;
    CHECK(cd_orphan);
  }
}

TEST_CASE("deadlock reproduction: NOR-gate completion detector variant") {
  auto f = exemplar_f();
  auto n = synthesize_method1(f, CdVariant::nor_gates);
  auto r = explore(n, EnvSpec::single(0));
  REQUIRE_FALSE(r.deadlocks.empty());
  // The return-to-zero deadlock matches the walkthrough snapshot.
  bool pinned = false;
  for (const auto& d : r.deadlocks) {
    if (d.state.phase.kind != PhaseKind::rtz) continue;
    bool match = true;
    for (const char* net : {"cd1", "cd2", "cd3", "cd4", "nor1"})
      match = match && net_value(n, d.state, net) == false;
    match = match && net_value(n, d.state, "nor2") == true;
    match = match && net_value(n, d.state, "D") == true;
    pinned = pinned || match;
  }
  CHECK(pinned);
  // Under unbounded delays this variant can also strand the valid phase:
  // when every input rail settles before the cd ORs fire, the C-element sees
  // all zeroes and drops D, which then can never rise again.
  bool valid_stall = false;
  for (const auto& d : r.deadlocks)
    if (d.state.phase.kind == PhaseKind::valid && net_value(n, d.state, "D") == false)
      valid_stall = true;
  CHECK(valid_stall);
}

TEST_CASE("corrected DSOP circuit is deadlock free over every codeword") {
  auto f = exemplar_f();
  auto n = synthesize_dsop(f);
  auto r = explore(n, EnvSpec::all_codewords(n));
  CHECK(r.deadlocks.empty());
  CHECK(r.all_phases_completed());
  // Confluence: the unique settled output equals the truth table everywhere.
  for (uint32_t w = 0; w < 16; ++w) {
    REQUIRE(r.valid_outputs.at(w).size() == 1);
    CHECK(*r.valid_outputs.at(w).begin() == (f.is_on(w) ? 1u : 0u));
  }
}

TEST_CASE("trace replay reproduces finding snapshots bit for bit") {
  auto n = synthesize_method1(exemplar_f(), CdVariant::or_gates);
  auto r = explore(n, EnvSpec::single(3));
  REQUIRE_FALSE(r.deadlocks.empty());
  for (const auto& d : r.deadlocks) {
    auto replayed = d.trace.replay();
    CHECK(replayed == d.state.net_values);
  }
}

TEST_CASE("scenario: decomposed NAND5, RTZ with t first, exactly one gate orphan on net2") {
  auto n = fig7_netlist();
  Scenario sc;
  sc.codeword = 0b11111;
  sc.phases.push_back({PhaseKind::valid, {{"p", "q", "r", "s", "t"}}});
  sc.phases.push_back({PhaseKind::rtz, {{"t"}, {"p", "q", "r", "s"}}});
  auto res = run_scenario(n, sc);
  CHECK_FALSE(res.deadlocked);
  REQUIRE(res.orphans.size() == 1);
  CHECK(res.orphans[0].kind == OrphanKind::gate);
  CHECK(n.net_name(res.orphans[0].net) == "net2");
  CHECK(res.orphans[0].phase.kind == PhaseKind::rtz);

  // Replaying the trace lands on the final snapshot.
  CHECK(res.trace.replay() == res.final_state.net_values);
}

TEST_CASE("scenario: DRCL wire orphans when b(0) and d(0) arrive late") {
  auto n = fig5_netlist();
  Scenario sc;
  sc.codeword = 0b0000;
  sc.phases.push_back({PhaseKind::valid, {{"a.0", "c.0"}, {"b.0", "d.0"}}});
  auto res = run_scenario(n, sc);
  CHECK_FALSE(res.deadlocked);
  REQUIRE(res.orphans.size() == 2);
  CHECK(res.orphans[0].kind == OrphanKind::wire);
  CHECK(res.orphans[1].kind == OrphanKind::wire);
  CHECK(n.net_name(res.orphans[0].net) == "b.0");
  CHECK(n.net_name(res.orphans[1].net) == "d.0");
}

TEST_CASE("scenario: DRCL gate orphan on Y(1) when c(1), d(1) arrive late") {
  auto n = fig5_netlist();
  Scenario sc;
  sc.codeword = 0b1111;
  sc.phases.push_back({PhaseKind::valid, {{"a.1", "b.1"}, {"c.1", "d.1"}}});
  auto res = run_scenario(n, sc);
  REQUIRE(res.orphans.size() == 1);
  CHECK(res.orphans[0].kind == OrphanKind::gate);
  CHECK(n.net_name(res.orphans[0].net) == "Y.1");
}

TEST_CASE("scenario: isochronic input forks eliminate the wire orphans") {
  auto base = fig5_netlist();
  build_completion_detector(base, {}, CdVariant::or_gates);

  Scenario sc;
  sc.codeword = 0b0000;
  sc.phases.push_back({PhaseKind::valid, {{"a.0", "c.0"}, {"b.0", "d.0"}}});

  // Without the annotation the CD branch firing does not acknowledge the fork.
  auto res_plain = run_scenario(base, sc);
  int wire_count = 0;
  for (const auto& o : res_plain.orphans)
    if (o.kind == OrphanKind::wire) ++wire_count;
  CHECK(wire_count == 2);

  auto iso = base;
  for (const auto& p : iso.inputs()) {
    iso.mark_isochronic(p.name + ".0");
    iso.mark_isochronic(p.name + ".1");
  }
  auto res_iso = run_scenario(iso, sc);
  for (const auto& o : res_iso.orphans) CHECK(o.kind != OrphanKind::wire);
  CHECK(res_iso.orphans.empty());
}

TEST_CASE("scenario rejects malformed step lists") {
  auto n = fig5_netlist();
  Scenario sc;
  sc.codeword = 0;
  sc.phases.push_back({PhaseKind::valid, {{"a.0"}}});  // missing three events
  CHECK_THROWS_AS(run_scenario(n, sc), std::invalid_argument);
  Scenario sc2;
  sc2.codeword = 0;
  sc2.phases.push_back({PhaseKind::valid, {{"a.1", "b.0", "c.0", "d.0"}}});  // wrong rail
  CHECK_THROWS_AS(run_scenario(n, sc2), std::invalid_argument);
}

TEST_CASE("classification: a lone C-element joint indicates strongly") {
  CHECK(classify_indication(c_element_joint()) == IndicationClass::strong);
}

TEST_CASE("classification: DIMS of a 2-input AND is strong") {
  auto n = dims_synthesize(function_from_spec(2, {3}));
  CHECK(classify_indication(n) == IndicationClass::strong);
}

TEST_CASE("classification: DRCL with completion detection is early output") {
  auto n = fig5_netlist();
  build_completion_detector(n, {}, CdVariant::or_gates);
  CHECK(classify_indication(n) == IndicationClass::early_output);
}

TEST_CASE("classification: early pass-through beside a held output is weak") {
  // X mirrors input a immediately (can fire before b arrives); Y = a AND b
  // through per-minterm C-elements, so the full output set still waits for
  // every input.  One early output with one held output is the weak class.
  Netlist n("weak2");
  n.add_input("a", true);
  n.add_input("b", true);
  n.add_output("X", true);
  n.add_output("Y", true);
  n.add_gate("x1", GateKind::BUF, {"a.1"}, "X.1");
  n.add_gate("x0", GateKind::BUF, {"a.0"}, "X.0");
  n.add_gate("cm3", GateKind::C, {"a.1", "b.1"}, "Y.1");
  n.add_gate("cm0", GateKind::C, {"a.0", "b.0"}, "m0");
  n.add_gate("cm1", GateKind::C, {"a.0", "b.1"}, "m1");
  n.add_gate("cm2", GateKind::C, {"a.1", "b.0"}, "m2");
  n.add_gate("or_f", GateKind::OR, {"m0", "m1", "m2"}, "Y.0");
  REQUIRE_FALSE(has_errors(n.validate()));
  CHECK(classify_indication(n) == IndicationClass::weak);
}

TEST_CASE("classification: deadlocking circuit is not self-timed") {
  auto n = synthesize_method1(exemplar_f(), CdVariant::or_gates);
  CHECK(classify_indication(n) == IndicationClass::not_self_timed);
}

TEST_CASE("classification internal ordering: strong implies the weak predicate") {
  for (const Netlist& n :
       {c_element_joint(), dims_synthesize(function_from_spec(2, {3})),
        dims_synthesize(function_from_spec(2, {1, 2}))}) {
    auto r = explore(n, EnvSpec::all_codewords(n));
    if (!r.strong_violated) CHECK_FALSE(r.weak_violated);
  }
}

TEST_CASE("monotonic cover: the kernel OR trips on a=0, b=0 and DSOP stays clean") {
  auto f = exemplar_f();
  auto method1 = synthesize_method1(f, CdVariant::or_gates);
  auto r = explore(method1, EnvSpec::single(0b0010));  // a=0 b=0 c=1 d=0
  bool kernel_finding = false;
  for (const auto& m : r.mcc)
    if (m.kind == MccFinding::Kind::nondisjoint_excitation && m.gate_id == "ker1")
      kernel_finding = true;
  CHECK(kernel_finding);

  auto dsop = synthesize_dsop(f);
  auto rd = explore(dsop, EnvSpec::all_codewords(dsop));
  for (const auto& m : rd.mcc) CHECK(m.kind != MccFinding::Kind::nondisjoint_excitation);
}

TEST_CASE("monotonic cover: constant wire circuit has no findings") {
  Netlist n("wirepair");
  n.add_input("a", true);
  n.add_output("Z", true);
  n.add_gate("g1", GateKind::BUF, {"a.1"}, "Z.1");
  n.add_gate("g0", GateKind::BUF, {"a.0"}, "Z.0");
  auto r = explore(n, EnvSpec::all_codewords(n));
  CHECK(r.mcc.empty());
  CHECK(r.deadlocks.empty());
}

TEST_CASE("isochronic annotation on DSOP inputs removes wire orphans exhaustively") {
  auto f = exemplar_f();
  auto plain = synthesize_dsop(f);
  auto r_plain = explore(plain, EnvSpec::all_codewords(plain));
  bool any_wire = false;
  for (const auto& o : r_plain.orphans)
    if (o.kind == OrphanKind::wire) any_wire = true;
  CHECK(any_wire);  // late-arrival orders strand unused input branches

  auto iso = synthesize_dsop(f);
  for (const auto& p : iso.inputs()) {
    iso.mark_isochronic(p.name + ".0");
    iso.mark_isochronic(p.name + ".1");
  }
  auto r_iso = explore(iso, EnvSpec::all_codewords(iso));
  for (const auto& o : r_iso.orphans) CHECK(o.kind != OrphanKind::wire);
}

TEST_CASE("explorer results are identical across execution modes") {
  std::vector<Netlist> circuits;
  circuits.push_back(synthesize_method1(exemplar_f(), CdVariant::or_gates));
  circuits.push_back(synthesize_dsop(function_from_spec(3, {1, 2, 5})));
  circuits.push_back(fig7_netlist());
  for (const auto& n : circuits) {
    EnvSpec env = n.inputs().size() > 4 ? EnvSpec::single(0b11111) : EnvSpec::all_codewords(n);
    auto serial = explore(n, env, {}, ExecMode::serial);
    auto parallel = explore(n, env, {}, ExecMode::parallel);
    CHECK(summarize(n, serial) == summarize(n, parallel));
  }
}

TEST_CASE("state limit is reported as partial results") {
  auto n = synthesize_dsop(exemplar_f());
  ExploreLimits limits;
  limits.max_states = 50;
  auto r = explore(n, EnvSpec::all_codewords(n), limits);
  CHECK(r.stats.state_limit_hit);
  CHECK(r.stats.states >= 50);
}

TEST_CASE("explore is total on validated netlists") {
  // Arbitrary feed-forward circuits with clean diagnostics must explore
  // without throwing, whatever their handshake behaviour.
  std::mt19937 rng(1999);
  for (int iter = 0; iter < 60; ++iter) {
    Netlist n("rand");
    std::vector<std::string> nets;
    int ports = 1 + (int)(rng() % 3);
    for (int i = 0; i < ports; ++i) {
      bool dual = rng() % 2;
      n.add_input("i" + std::to_string(i), dual);
      nets.push_back(dual ? "i" + std::to_string(i) + ".1" : "i" + std::to_string(i));
      if (dual) nets.push_back("i" + std::to_string(i) + ".0");
    }
    int gates = 1 + (int)(rng() % 6);
    for (int g = 0; g < gates; ++g) {
      GateKind kind = static_cast<GateKind>(rng() % 7);
      bool unary = kind == GateKind::INV || kind == GateKind::BUF;
      int fanin = unary ? 1 : 2;
      std::vector<std::string> ins;
      for (int k = 0; k < fanin; ++k) ins.push_back(nets[rng() % nets.size()]);
      std::string out = "n" + std::to_string(g);
      n.add_gate("g" + std::to_string(g), kind, ins, out, rng() % 2 != 0);
      nets.push_back(out);
    }
    n.add_output("o", false);
    n.add_gate("gout", GateKind::BUF, {nets.back()}, "o");
    REQUIRE_FALSE(has_errors(n.validate()));
    ExploreLimits limits;
    limits.max_states = 20000;
    auto r = explore(n, EnvSpec::single((uint32_t)(rng() % (1u << ports))), limits);
    REQUIRE(r.stats.states >= 1);
  }
}

TEST_CASE("explore rejects invalid netlists") {
  Netlist n("bad");
  n.add_input("a", false);
  n.add_output("z", false);
  n.add_gate("g1", GateKind::AND, {"a", "w"}, "z");
  n.add_gate("g2", GateKind::BUF, {"z"}, "w");
  n.add_gate("g3", GateKind::BUF, {"w"}, "z");  // double driver + cycle
  CHECK_THROWS_AS(explore(n, EnvSpec::single(1)), std::invalid_argument);
}
