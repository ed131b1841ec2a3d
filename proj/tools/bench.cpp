// Benchmark: serial reference explorer vs OpenMP frontier expansion on the
// same circuits, verifying along the way that both modes produce identical
// results.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "adw/analysis.hpp"
#include "adw/synthesis.hpp"

using namespace adw;
using Clock = std::chrono::steady_clock;

namespace {

std::string fingerprint(const Netlist& n, const ReachabilityResult& r) {
  std::ostringstream ss;
  ss << r.stats.states << "|" << r.stats.transitions << "|" << r.deadlocks.size() << "|";
  for (const auto& o : r.orphans)
    ss << (o.kind == OrphanKind::wire ? "w" : "g") << n.net_name(o.net) << ";";
  ss << "|";
  for (const auto& m : r.mcc) ss << m.gate_id << ";";
  for (const auto& [cw, outs] : r.valid_outputs) {
    ss << cw << ":";
    for (uint32_t o : outs) ss << o << ",";
  }
  return ss.str();
}

struct BenchCase {
  std::string name;
  Netlist netlist;
  EnvSpec env;
};

BooleanFunction random_function(std::mt19937& rng, int vars) {
  std::vector<uint32_t> on;
  while (on.empty() || on.size() == (1u << vars)) {
    on.clear();
    for (uint32_t m = 0; m < (1u << vars); ++m)
      if (rng() % 2) on.push_back(m);
  }
  return function_from_spec(vars, on);
}

double run_once(const Netlist& n, const EnvSpec& env, ExecMode mode, std::string& fp,
                uint64_t& states) {
  auto t0 = Clock::now();
  auto r = explore(n, env, ExploreLimits{.max_states = 20'000'000, .max_depth = 100'000}, mode);
  auto t1 = Clock::now();
  fp = fingerprint(n, r);
  states = r.stats.states;
  return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  int vars = 5;
  unsigned seed = 7;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--vars" && i + 1 < argc) vars = std::atoi(argv[++i]);
    if (a == "--seed" && i + 1 < argc) seed = (unsigned)std::atoi(argv[++i]);
  }
  std::mt19937 rng(seed);

  std::vector<BenchCase> cases;
  {
    auto f = random_function(rng, vars);
    BenchCase c{"dsop_" + std::to_string(vars) + "var", synthesize_dsop(f), {}};
    c.env = EnvSpec::all_codewords(c.netlist);
    cases.push_back(std::move(c));
  }
  {
    auto f = random_function(rng, std::min(vars, 4));
    BenchCase c{"dims_" + std::to_string(std::min(vars, 4)) + "var", dims_synthesize(f), {}};
    c.env = EnvSpec::all_codewords(c.netlist);
    cases.push_back(std::move(c));
  }
  {
    auto f = function_from_spec(4, {1, 2, 3, 5, 6, 7, 9, 10, 11, 13});
    BenchCase c{"drcl_cd_4var", drcl_translate(f), {}};
    build_completion_detector(c.netlist, {}, CdVariant::or_gates);
    c.env = EnvSpec::all_codewords(c.netlist);
    cases.push_back(std::move(c));
  }

#ifdef _OPENMP
  std::printf("OpenMP: %d thread(s)\n", omp_get_max_threads());
#else
  std::printf("OpenMP: not available; parallel mode falls back to serial\n");
#endif
  std::printf("%-16s %12s %10s %11s %8s  %s\n", "circuit", "states", "serial[s]", "parallel[s]",
              "speedup", "results");

  bool all_equal = true;
  for (const auto& c : cases) {
    std::string fp_s, fp_p;
    uint64_t st_s = 0, st_p = 0;
    double ts = run_once(c.netlist, c.env, ExecMode::serial, fp_s, st_s);
    double tp = run_once(c.netlist, c.env, ExecMode::parallel, fp_p, st_p);
    bool equal = fp_s == fp_p && st_s == st_p;
    all_equal = all_equal && equal;
    std::printf("%-16s %12llu %10.3f %11.3f %8.2f  %s\n", c.name.c_str(),
                (unsigned long long)st_s, ts, tp, tp > 0 ? ts / tp : 0.0,
                equal ? "identical" : "MISMATCH");
  }
  return all_equal ? 0 : 1;
}
