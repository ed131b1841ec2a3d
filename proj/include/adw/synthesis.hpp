#pragma once

#include <string>
#include <vector>

#include "adw/boolean.hpp"
#include "adw/netlist.hpp"

// Generators from Boolean specifications to dual-rail netlists:
//
//   drcl_translate      gate-by-gate De Morgan mirror of a two-level cover
//   synthesize_method1  multi-level NAND-mapped flow with OR/NOR internal
//                       completion detection (a known-broken construction
//                       kept for study; see the fig6 reproduce cases)
//   synthesize_dsop     corrected two-level flow from disjoint covers, full
//                       input+output completion detection
//   dims_synthesize     one C-element per care minterm, strongly indicating
//   nand_decompose_naive  the deliberately flawed high-fan-in NAND split
//   build_completion_detector  per-input OR pairs, output-rail OR, optional
//                       internal taps, joined by a C-element producing D

namespace adw {

enum class SynthMethod { drcl, method1, dsop, dims };
enum class CdVariant { or_gates, nor_gates, none };

struct SynthesisOptions {
  SynthMethod method = SynthMethod::dsop;
  CdVariant cd_variant = CdVariant::none;
  int max_fanin = 0;  // 0 = unlimited
  bool decompose_naive = false;
};

const char* synth_method_name(SynthMethod m);

Netlist drcl_translate(const SopExpression& single_rail_cover, const std::string& output_name);
Netlist drcl_translate(const BooleanFunction& f, const std::string& output_name = "F");

/// cd_variant selects OR or NOR internal completion detectors.  The NOR
/// variant resets the detector C-element to 1, the value this construction
/// claims D holds under spacers; see the fig6 deadlock analyses.
Netlist synthesize_method1(const BooleanFunction& f, CdVariant cd_variant = CdVariant::or_gates);

Netlist synthesize_dsop(const BooleanFunction& f);

Netlist dims_synthesize(const BooleanFunction& f);

/// Splits a NAND gate whose fan-in exceeds max_fanin into the naive
/// NAND/INV chain.  Returns the ids of the gates forming the chain; the
/// netlist is unchanged when the gate already fits.
std::vector<std::string> nand_decompose_naive(Netlist& n, const std::string& gate_id,
                                              int max_fanin);

/// Adds completion detection to a dual-rail netlist: one 2-input OR per input
/// pair (nets cd1..cdk), an OR/NOR over all output rails (or2/nor2), an
/// optional OR/NOR over internal tap nets (or1/nor1), and a C-element driving
/// the new cd output D.  d_init sets the C-element reset value.
void build_completion_detector(Netlist& n, const std::vector<std::string>& internal_taps,
                               CdVariant variant, bool d_init = false);

/// Dispatcher used by the command line: synthesizes per options and applies
/// the naive decomposition to oversized NANDs when requested.
Netlist synthesize(const BooleanFunction& f, const SynthesisOptions& opts);

}  // namespace adw
