// adw: asynchronous dual-rail workbench.
//
// Subcommands: minimize (two-level covers and dual-rail encodings from a
// function spec), dsop (disjointness check/conversion on expressions), synth
// (netlist generation), analyze (interleaving exploration with deadlock,
// orphan, monotonic-cover and indication checks), reproduce (canned
// walkthrough cases).
//
// Exit codes: 0 clean, 1 findings (or a failed check/reproduction), 2 errors
// including malformed inputs, option conflicts, and exhausted exploration
// limits.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "adw/report.hpp"
#include "adw/repro.hpp"
#include "adw/synthesis.hpp"

using namespace adw;
using nlohmann::json;

namespace {

struct CommonOpts {
  std::string format = "text";
  bool serial = false;
};

uint64_t default_state_limit() {
  if (const char* env = std::getenv("ADW_LIMIT_STATES")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
    std::cerr << "warning: ignoring malformed ADW_LIMIT_STATES\n";
  }
  return ExploreLimits{}.max_states;
}

std::string file_stem(const std::string& path) {
  auto slash = path.find_last_of("/\\");
  std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
  auto dot = base.find_last_of('.');
  return dot == std::string::npos ? base : base.substr(0, dot);
}

int cmd_minimize(const std::string& spec_path, const CommonOpts& opts) {
  BooleanFunction f = parse_function_spec_file(spec_path);
  auto on_cover = minimize_cover(f, CoverPolarity::on);
  auto off_cover = minimize_cover(f, CoverPolarity::off);
  auto factored = factor_single_kernel(on_cover);
  auto onoff = dual_rail_encode(f, DualRailMode::onoff);
  auto drcl = dual_rail_encode(f, DualRailMode::drcl);
  auto rail_factored = factor_single_kernel(onoff.true_rail);

  if (opts.format == "json") {
    json j;
    j["function"] = file_stem(spec_path);
    j["vars"] = f.var_count();
    j["names"] = f.var_names();
    j["on_cover"] = on_cover.to_string();
    j["off_cover"] = off_cover.to_string();
    j["factored"] = factored.to_string();
    j["true_rail"] = rail_factored.to_string();
    j["false_rail"] = onoff.false_rail.to_string();
    j["drcl_false_rail"] = drcl.false_rail.to_string();
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "function " << file_stem(spec_path) << ": " << f.var_count() << " variables, "
              << f.on_set().size() << " on-set minterms, " << f.dc_set().size()
              << " don't-cares\n";
    std::cout << "ON cover  : " << on_cover.to_string() << "\n";
    std::cout << "OFF cover : " << off_cover.to_string() << "\n";
    std::cout << "factored  : " << factored.to_string() << "\n";
    std::cout << "true rail : " << rail_factored.to_string() << "\n";
    std::cout << "false rail: " << onoff.false_rail.to_string() << "\n";
    std::cout << "drcl dual : " << drcl.false_rail.to_string() << "\n";
    for (uint32_t m : onoff.overlap_warnings)
      std::cout << "warning: both rails claim don't-care minterm " << m << "\n";
  }
  return 0;
}

int cmd_dsop(const std::string& mode, const std::string& text, const CommonOpts& opts) {
  SopExpression e = parse_expression(text);
  if (mode == "check") {
    auto v = is_dsop(e);
    if (opts.format == "json") {
      json j;
      j["expression"] = e.to_string();
      j["dsop"] = v.disjoint;
      if (v.witness) {
        j["witness"] = json::array({e.term_to_string(v.witness->first),
                                    e.term_to_string(v.witness->second)});
      }
      std::cout << j.dump(2) << "\n";
    } else if (v.disjoint) {
      std::cout << "DSOP: every pair of product terms is disjoint\n";
    } else {
      std::cout << "NOT-DSOP: witness " << e.term_to_string(v.witness->first) << " * "
                << e.term_to_string(v.witness->second) << " != 0\n";
    }
    return v.disjoint ? 0 : 1;
  }
  auto d = sop_to_dsop(e);
  if (opts.format == "json") {
    json j;
    j["expression"] = e.to_string();
    j["dsop"] = d.to_string();
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << d.to_string() << "\n";
  }
  return 0;
}

int cmd_synth(const std::string& spec_path, const std::string& out_path, SynthesisOptions opts,
              bool cd_flag_given) {
  BooleanFunction f = parse_function_spec_file(spec_path);
  if (opts.cd_variant == CdVariant::nor_gates && opts.method != SynthMethod::method1)
    throw std::invalid_argument("--cd nor is only meaningful with --method method1");
  if (opts.decompose_naive && opts.max_fanin < 2)
    throw std::invalid_argument("--decompose naive requires --max-fanin >= 2");
  if (!cd_flag_given && opts.method == SynthMethod::method1) opts.cd_variant = CdVariant::or_gates;
  Netlist n = synthesize(f, opts);
  n.set_name(file_stem(spec_path) + "_" + synth_method_name(opts.method));

  std::string text = n.serialize();
  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) throw std::runtime_error("cannot write " + out_path);
    out = &file;
  }
  *out << text;

  std::map<std::string, int> kinds;
  for (const auto& g : n.gates()) kinds[gate_kind_name(g.kind)]++;
  std::ostream& info = out_path.empty() ? std::cerr : std::cout;
  info << "circuit " << n.name() << ": " << n.gates().size() << " gates (";
  bool first = true;
  for (const auto& [k, count] : kinds) {
    if (!first) info << ", ";
    first = false;
    info << count << " " << k;
  }
  info << "), " << n.net_count() << " nets";
  if (n.cd_output() >= 0) {
    int d = n.driver_of(n.cd_output());
    info << ", CD C-element fan-in " << n.gates()[d].inputs.size();
  }
  info << "\n";
  return 0;
}

int cmd_analyze(const std::string& net_path, const std::vector<Check>& checks,
                const std::string& codewords_arg, ExploreLimits limits, const CommonOpts& opts) {
  Netlist n = Netlist::parse_file(net_path);
  auto diags = n.validate();
  for (const auto& d : diags) {
    std::cerr << (d.severity == Diagnostic::Severity::error ? "error: " : "warning: ") << d.rule
              << " on " << d.subject << ": " << d.message << "\n";
  }
  if (has_errors(diags)) return 2;

  EnvSpec env;
  if (codewords_arg == "all") {
    env = EnvSpec::all_codewords(n);
  } else {
    std::istringstream ss(codewords_arg);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      size_t pos = 0;
      unsigned long v = std::stoul(tok, &pos, 10);
      if (pos != tok.size()) throw std::invalid_argument("bad codeword '" + tok + "'");
      if (v >= (1ull << n.inputs().size()))
        throw std::invalid_argument("codeword " + tok + " out of range");
      env.codewords.push_back((uint32_t)v);
    }
    if (env.codewords.empty()) throw std::invalid_argument("empty codeword list");
  }

  ExecMode mode = opts.serial ? ExecMode::serial : ExecMode::parallel;
  bool wants_findings = false;
  for (Check c : checks)
    if (c != Check::classify) wants_findings = true;
  bool wants_classify =
      std::find(checks.begin(), checks.end(), Check::classify) != checks.end();

  ReachabilityResult r;
  if (wants_findings) r = explore(n, env, limits, mode);
  std::optional<IndicationClass> cls;
  if (wants_classify) cls = classify_indication(n, limits, mode);

  AnalysisReport rep = make_report(n, "analysis", r, checks, cls);
  if (opts.format == "json") {
    std::cout << report_to_json(rep, n);
  } else {
    std::cout << report_to_text(rep, n);
  }
  if (rep.limits_hit()) {
    std::cerr << "error: exploration limits exhausted (states=" << rep.stats.states
              << "); results are partial\n";
    return 2;
  }
  return rep.has_findings() ? 1 : 0;
}

int cmd_reproduce(const std::string& case_id, bool list) {
  if (list) {
    for (const auto& c : repro_cases()) std::cout << c.id << ": " << c.title << "\n";
    return 0;
  }
  const ReproCase* c = find_repro_case(case_id);
  if (!c) {
    std::cerr << "error: unknown case '" << case_id << "'; try --list\n";
    return 2;
  }
  std::cout << "== " << c->id << ": " << c->title << " ==\n\n";
  bool ok = c->run(std::cout);
  std::cout << "\n" << (ok ? "PASS" : "FAIL") << ": " << c->id << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"asynchronous dual-rail logic workbench"};
  app.require_subcommand(1);
  CommonOpts common;

  std::string spec_path, net_path, expr, out_path, case_id;
  std::string dsop_mode;
  std::string method_arg = "dsop", cd_arg = "none", decompose_arg, checks_arg, codewords_arg = "all";
  bool list_cases = false;
  int max_fanin = 0;
  uint64_t limit_states = default_state_limit();
  int limit_depth = ExploreLimits{}.max_depth;

  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", common.format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
  };

  auto* minimize = app.add_subcommand("minimize", "two-level covers from a function spec");
  minimize->add_option("spec", spec_path, "function spec file")->required();
  add_format(minimize);

  auto* dsop = app.add_subcommand("dsop", "disjoint sum-of-products check/conversion");
  dsop->add_option("mode", dsop_mode, "check or convert")
      ->required()
      ->check(CLI::IsMember({"check", "convert"}));
  dsop->add_option("expression", expr, "expression, e.g. \"c(a+b)+dc'\"")->required();
  add_format(dsop);

  auto* synth = app.add_subcommand("synth", "synthesize a dual-rail netlist");
  synth->add_option("spec", spec_path, "function spec file")->required();
  synth->add_option("-o,--output", out_path, "netlist output file (default stdout)");
  synth->add_option("--method", method_arg, "drcl | method1 | dsop | dims")
      ->check(CLI::IsMember({"drcl", "method1", "dsop", "dims"}));
  auto* cd_opt = synth->add_option("--cd", cd_arg, "completion detector: or | nor | none")
                     ->check(CLI::IsMember({"or", "nor", "none"}));
  synth->add_option("--max-fanin", max_fanin, "cell fan-in bound for decomposition");
  synth->add_option("--decompose", decompose_arg, "naive: split oversized NANDs")
      ->check(CLI::IsMember({"naive"}));

  auto* analyze = app.add_subcommand("analyze", "explore a netlist and report findings");
  analyze->add_option("netlist", net_path, "netlist file")->required();
  analyze->add_option("--checks", checks_arg, "comma list: deadlock,orphans,mcc,classify");
  analyze->add_option("--codewords", codewords_arg, "all or a comma list of codeword values");
  analyze->add_option("--limit-states", limit_states, "state budget");
  analyze->add_option("--limit-depth", limit_depth, "interleaving depth budget");
  analyze->add_flag("--serial", common.serial, "disable parallel frontier expansion");
  add_format(analyze);

  auto* reproduce = app.add_subcommand("reproduce", "run a canned walkthrough case");
  reproduce->add_option("case", case_id, "case id, e.g. fig6-or");
  reproduce->add_flag("--list", list_cases, "list available cases");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (minimize->parsed()) return cmd_minimize(spec_path, common);
    if (dsop->parsed()) return cmd_dsop(dsop_mode, expr, common);
    if (synth->parsed()) {
      SynthesisOptions opts;
      if (method_arg == "drcl") opts.method = SynthMethod::drcl;
      if (method_arg == "method1") opts.method = SynthMethod::method1;
      if (method_arg == "dsop") opts.method = SynthMethod::dsop;
      if (method_arg == "dims") opts.method = SynthMethod::dims;
      if (cd_arg == "or") opts.cd_variant = CdVariant::or_gates;
      if (cd_arg == "nor") opts.cd_variant = CdVariant::nor_gates;
      opts.max_fanin = max_fanin;
      opts.decompose_naive = decompose_arg == "naive";
      return cmd_synth(spec_path, out_path, opts, cd_opt->count() > 0);
    }
    if (analyze->parsed()) {
      std::vector<Check> checks;
      if (checks_arg.empty()) {
        checks = {Check::deadlock, Check::orphans, Check::mcc, Check::classify};
      } else {
        std::istringstream ss(checks_arg);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
          auto c = check_from_name(tok);
          if (!c) throw std::invalid_argument("unknown check '" + tok + "'");
          checks.push_back(*c);
        }
      }
      ExploreLimits limits;
      limits.max_states = limit_states;
      limits.max_depth = limit_depth;
      return cmd_analyze(net_path, checks, codewords_arg, limits, common);
    }
    if (reproduce->parsed()) {
      if (!list_cases && case_id.empty())
        throw std::invalid_argument("reproduce needs a case id or --list");
      return cmd_reproduce(case_id, list_cases);
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
