#pragma once

#include <optional>
#include <string>
#include <vector>

#include "adw/analysis.hpp"

namespace adw {

enum class Check { deadlock, orphans, mcc, classify };

std::optional<Check> check_from_name(const std::string& s);
const char* check_name(Check c);

struct AnalysisReport {
  std::string circuit;
  std::string method;
  std::vector<Check> checks;
  std::vector<DeadlockFinding> deadlocks;
  std::vector<OrphanFinding> orphans;
  std::vector<MccFinding> mcc;
  std::optional<IndicationClass> classification;
  ExploreStats stats;

  bool has_findings() const {
    return !deadlocks.empty() || !orphans.empty() || !mcc.empty();
  }
  bool limits_hit() const { return stats.state_limit_hit || stats.depth_limit_hit; }
};

/// Filters an exploration result down to the selected checks.
AnalysisReport make_report(const Netlist& n, const std::string& method,
                           const ReachabilityResult& r, const std::vector<Check>& checks,
                           std::optional<IndicationClass> classification);

/// Structured form: {circuit, method, deadlocks[], orphans[], mcc[],
/// classification, stats} with traces as {seq, net, value, source, phase}
/// event arrays.  Net names are the raw netlist names.
std::string report_to_json(const AnalysisReport& rep, const Netlist& n, int indent = 2);

/// Human-readable narrative; state snapshots use the a(0)/a(1) rail notation.
std::string report_to_text(const AnalysisReport& rep, const Netlist& n);

}  // namespace adw
