#include "adw/synthesis.hpp"

#include <algorithm>
#include <functional>

namespace adw {

const char* synth_method_name(SynthMethod m) {
  switch (m) {
    case SynthMethod::drcl: return "drcl";
    case SynthMethod::method1: return "method1";
    case SynthMethod::dsop: return "dsop";
    case SynthMethod::dims: return "dims";
  }
  return "?";
}

namespace {

std::string rail_net(const std::string& var, Polarity p) {
  return var + (p == Polarity::pos ? ".1" : ".0");
}

// Rails read by a product term: positive literal -> x.1, negative -> x.0.
std::vector<std::string> term_rails(const SopExpression& e, const ProductTerm& t) {
  std::vector<std::string> rails;
  for (int v = 0; v < e.var_count(); ++v)
    if (t.has(v)) rails.push_back(rail_net(e.var_names()[v], t.polarity_of(v)));
  return rails;
}

// Complement rails, for the De Morgan mirror.
std::vector<std::string> term_mirror_rails(const SopExpression& e, const ProductTerm& t) {
  std::vector<std::string> rails;
  for (int v = 0; v < e.var_count(); ++v)
    if (t.has(v))
      rails.push_back(rail_net(e.var_names()[v],
                               t.polarity_of(v) == Polarity::pos ? Polarity::neg : Polarity::pos));
  return rails;
}

// Intermediate port names in walkthrough style (X, Y, ...), skipping
// anything already taken.
std::string pick_mid_name(const Netlist& n, std::vector<std::string>& taken, size_t index) {
  static const char* preferred[] = {"X", "Y", "W", "V", "U", "S", "R", "Q", "P", "O", "M", "L"};
  auto in_use = [&](const std::string& name) {
    if (std::find(taken.begin(), taken.end(), name) != taken.end()) return true;
    for (const auto& p : n.inputs())
      if (p.name == name) return true;
    for (const auto& p : n.outputs())
      if (p.name == name) return true;
    return false;
  };
  for (const char* c : preferred) {
    if (!in_use(c)) {
      taken.push_back(c);
      return c;
    }
  }
  std::string fallback = "T" + std::to_string(index);
  while (in_use(fallback)) fallback += "x";
  taken.push_back(fallback);
  return fallback;
}

}  // namespace

Netlist drcl_translate(const SopExpression& cover, const std::string& output_name) {
  const auto terms = expand_factored(cover).flat_terms();
  if (terms.empty()) throw std::invalid_argument("drcl: cover is constant 0");
  for (const auto& t : terms)
    if (t.is_one()) throw std::invalid_argument("drcl: cover is constant 1");

  Netlist n(output_name + "_drcl");
  for (const auto& v : cover.var_names()) n.add_input(v, true);
  n.add_output(output_name, true);

  if (terms.size() == 1) {
    const auto& t = terms[0];
    auto rails = term_rails(cover, t);
    auto mirror = term_mirror_rails(cover, t);
    if (rails.size() == 1) {
      n.add_gate("g11", GateKind::BUF, rails, output_name + ".1");
      n.add_gate("g10", GateKind::BUF, mirror, output_name + ".0");
    } else {
      n.add_gate("g11", GateKind::AND, rails, output_name + ".1");
      n.add_gate("g10", GateKind::OR, mirror, output_name + ".0");
    }
    return n;
  }

  std::vector<std::string> taken;
  std::vector<std::string> mids;
  for (size_t i = 0; i < terms.size(); ++i) mids.push_back(pick_mid_name(n, taken, i));

  std::vector<std::string> true_mids, false_mids;
  for (size_t i = 0; i < terms.size(); ++i) {
    const auto& t = terms[i];
    auto rails = term_rails(cover, t);
    auto mirror = term_mirror_rails(cover, t);
    std::string idt = "g" + std::to_string(i + 1) + "1";
    std::string idf = "g" + std::to_string(i + 1) + "0";
    std::string mt = mids[i] + ".1";
    std::string mf = mids[i] + ".0";
    if (rails.size() == 1) {
      n.add_gate(idt, GateKind::BUF, rails, mt);
      n.add_gate(idf, GateKind::BUF, mirror, mf);
    } else {
      n.add_gate(idt, GateKind::AND, rails, mt);
      n.add_gate(idf, GateKind::OR, mirror, mf);
    }
    true_mids.push_back(mt);
    false_mids.push_back(mf);
  }
  std::string join = std::to_string(terms.size() + 1);
  n.add_gate("g" + join + "1", GateKind::OR, true_mids, output_name + ".1");
  n.add_gate("g" + join + "0", GateKind::AND, false_mids, output_name + ".0");
  return n;
}

Netlist drcl_translate(const BooleanFunction& f, const std::string& output_name) {
  return drcl_translate(minimize_cover(f, CoverPolarity::on), output_name);
}

void build_completion_detector(Netlist& n, const std::vector<std::string>& internal_taps,
                               CdVariant variant, bool d_init) {
  if (variant == CdVariant::none) throw std::invalid_argument("completion detector needs or|nor");
  if (n.cd_output() >= 0) throw std::invalid_argument("netlist already has a cd output");
  if (n.inputs().empty()) throw std::invalid_argument("completion detector needs inputs");
  for (const auto& p : n.inputs())
    if (!p.dual_rail) throw std::invalid_argument("completion detector needs dual-rail inputs");
  if (n.outputs().empty()) throw std::invalid_argument("completion detector needs outputs");
  for (const auto& t : internal_taps)
    if (n.net_id(t) < 0) throw std::invalid_argument("tap net '" + t + "' not in netlist");

  bool nor = variant == CdVariant::nor_gates;
  GateKind join_kind = nor ? GateKind::NOR : GateKind::OR;

  std::vector<std::string> c_inputs;
  for (size_t i = 0; i < n.inputs().size(); ++i) {
    const Port& p = n.inputs()[i];
    std::string cd_net = "cd" + std::to_string(i + 1);
    n.add_gate("k" + std::to_string(10 + i), GateKind::OR,
               {n.net_name(p.rail0), n.net_name(p.rail1)}, cd_net);
    c_inputs.push_back(cd_net);
  }

  std::vector<std::string> out_rails;
  for (const auto& p : n.outputs()) {
    out_rails.push_back(n.net_name(p.rail1 >= 0 ? p.rail1 : p.rail0));
    if (p.dual_rail) out_rails.push_back(n.net_name(p.rail0));
  }
  std::string det2 = nor ? "nor2" : "or2";
  std::string det2_id = (nor ? "nk" : "k") + std::to_string(10 + n.inputs().size());
  if (out_rails.size() == 1) {
    n.add_gate(det2_id, nor ? GateKind::INV : GateKind::BUF, out_rails, det2);
  } else {
    n.add_gate(det2_id, join_kind, out_rails, det2);
  }
  c_inputs.push_back(det2);

  if (!internal_taps.empty()) {
    std::string det1 = nor ? "nor1" : "or1";
    if (internal_taps.size() == 1) {
      n.add_gate(nor ? "nk9" : "k9", nor ? GateKind::INV : GateKind::BUF, internal_taps, det1);
    } else {
      n.add_gate(nor ? "nk9" : "k9", join_kind, internal_taps, det1);
    }
    c_inputs.push_back(det1);
  }

  n.add_gate("ce", GateKind::C, c_inputs, "D", d_init);
  n.set_cd_output("D");
}

namespace {

// NAND-NAND mapping of one rail's (possibly factored) cover.  Stage-1 NANDs
// land on nets named by int_name(); kernels become explicit OR gates so their
// joins stay visible to the monotonic-cover check.  Returns the stage-1 nets.
struct RailBuild {
  std::vector<std::string> stage1;
};

RailBuild build_nand_rail(Netlist& n, const SopExpression& cover, const std::string& rail_out,
                          const std::string& tag, int& int_counter, int& ker_counter,
                          const std::function<std::string(int)>& int_name) {
  RailBuild rb;
  const auto& nodes = cover.nodes();
  std::vector<std::string> stage1;
  int local = 0;
  for (const auto& node : nodes) {
    std::string net = int_name(int_counter++);
    std::vector<std::string> nand_ins;
    if (std::holds_alternative<ProductTerm>(node)) {
      nand_ins = term_rails(cover, std::get<ProductTerm>(node));
    } else {
      const auto& fn = std::get<FactoredNode>(node);
      // Kernel OR: one input per kernel term (single literals read the rail
      // directly, wider terms get an AND).
      std::vector<std::string> kernel_ins;
      for (size_t k = 0; k < fn.kernel.size(); ++k) {
        auto rails = term_rails(cover, fn.kernel[k]);
        if (rails.size() == 1) {
          kernel_ins.push_back(rails[0]);
        } else {
          std::string kt = "kt" + std::to_string(ker_counter) + "_" + std::to_string(k);
          n.add_gate("ka" + std::to_string(ker_counter) + "_" + std::to_string(k), GateKind::AND,
                     rails, kt);
          kernel_ins.push_back(kt);
        }
      }
      std::string ker = "ker" + std::to_string(ker_counter);
      n.add_gate(ker, GateKind::OR, kernel_ins, ker);
      ++ker_counter;
      nand_ins.push_back(ker);
      auto prefix_rails = term_rails(cover, fn.prefix);
      nand_ins.insert(nand_ins.end(), prefix_rails.begin(), prefix_rails.end());
    }
    std::string gid = tag + std::to_string(++local);
    if (nand_ins.size() == 1) {
      n.add_gate(gid, GateKind::INV, nand_ins, net);
    } else {
      n.add_gate(gid, GateKind::NAND, nand_ins, net);
    }
    stage1.push_back(net);
  }
  std::string top_id = tag + "out";
  if (stage1.size() == 1) {
    n.add_gate(top_id, GateKind::INV, stage1, rail_out);
  } else {
    n.add_gate(top_id, GateKind::NAND, stage1, rail_out);
  }
  rb.stage1 = stage1;
  return rb;
}

}  // namespace

Netlist synthesize_method1(const BooleanFunction& f, CdVariant cd_variant) {
  if (cd_variant == CdVariant::none) cd_variant = CdVariant::or_gates;
  auto on_cover = factor_single_kernel(minimize_cover(f, CoverPolarity::on));
  auto off_cover = factor_single_kernel(minimize_cover(f, CoverPolarity::off));
  if (on_cover.empty() || off_cover.empty())
    throw std::invalid_argument("method1 requires a non-constant function");

  Netlist n("F_method1_" + std::string(cd_variant == CdVariant::nor_gates ? "nor" : "or"));
  for (const auto& v : f.var_names()) n.add_input(v, true);
  n.add_output("F", true);

  // Interleaved int numbering so int1/int2 are the first stage-1 nets of the
  // true and false rails; the internal detector taps exactly those two.
  int true_nodes = (int)on_cover.nodes().size();
  int false_nodes = (int)off_cover.nodes().size();
  auto int_name_for = [&](bool true_rail) {
    return [true_rail, true_nodes, false_nodes](int local) {
      int idx;
      int both = std::min(true_nodes, false_nodes);
      if (local < both) {
        idx = 2 * local + (true_rail ? 1 : 2);
      } else {
        idx = 2 * both + (local - both) + 1;
      }
      return "int" + std::to_string(idx);
    };
  };

  int int_counter_t = 0, int_counter_f = 0, ker_counter = 1;
  auto t_rail =
      build_nand_rail(n, on_cover, "F.1", "ft", int_counter_t, ker_counter, int_name_for(true));
  auto f_rail =
      build_nand_rail(n, off_cover, "F.0", "ff", int_counter_f, ker_counter, int_name_for(false));

  build_completion_detector(n, {t_rail.stage1[0], f_rail.stage1[0]}, cd_variant,
                            cd_variant == CdVariant::nor_gates);
  return n;
}

Netlist synthesize_dsop(const BooleanFunction& f) {
  auto true_terms = sop_to_dsop(minimize_cover(f, CoverPolarity::on));
  auto false_terms = sop_to_dsop(minimize_cover(f, CoverPolarity::off));

  Netlist n("F_dsop");
  for (const auto& v : f.var_names()) n.add_input(v, true);
  n.add_output("F", true);

  struct RailPlan {
    bool tautology = false;
    std::vector<std::vector<std::string>> products;  // rails per term
  };
  auto plan_rail = [&](const SopExpression& cover) {
    RailPlan plan;
    for (const auto& t : cover.flat_terms()) {
      if (t.is_one()) {
        plan.tautology = true;
        continue;
      }
      plan.products.push_back(term_rails(cover, t));
    }
    return plan;
  };
  RailPlan tplan = plan_rail(true_terms);
  RailPlan fplan = plan_rail(false_terms);

  auto build_rail = [&](const RailPlan& plan, const std::string& rail, const std::string& tag) {
    if (plan.tautology || plan.products.empty()) return;  // handled after CD
    if (plan.products.size() == 1) {
      // Single product drives the rail directly.
      const auto& rails = plan.products[0];
      n.add_gate(tag + "1", rails.size() == 1 ? GateKind::BUF : GateKind::AND, rails, rail);
      return;
    }
    std::vector<std::string> product_nets;
    for (size_t i = 0; i < plan.products.size(); ++i) {
      if (plan.products[i].size() == 1) {
        product_nets.push_back(plan.products[i][0]);
      } else {
        std::string net = tag + std::to_string(i + 1);
        n.add_gate(tag + std::to_string(i + 1), GateKind::AND, plan.products[i], net);
        product_nets.push_back(net);
      }
    }
    n.add_gate(tag + "or", GateKind::OR, product_nets, rail);
  };
  build_rail(tplan, "F.1", "pt");
  build_rail(fplan, "F.0", "pf");

  build_completion_detector(n, {}, CdVariant::or_gates, false);

  // A constant side still has to indicate input arrival: tie it to the OR of
  // the per-input detectors.
  auto tie_constant = [&](const RailPlan& plan, const std::string& rail, const std::string& id) {
    if (!plan.tautology) return;
    std::vector<std::string> cds;
    for (size_t i = 0; i < n.inputs().size(); ++i) cds.push_back("cd" + std::to_string(i + 1));
    if (cds.size() == 1) {
      n.add_gate(id, GateKind::BUF, cds, rail);
    } else {
      n.add_gate(id, GateKind::OR, cds, rail);
    }
  };
  tie_constant(tplan, "F.1", "tie1");
  tie_constant(fplan, "F.0", "tie0");
  return n;
}

Netlist dims_synthesize(const BooleanFunction& f) {
  if (f.var_count() > 6)
    throw std::invalid_argument("dims synthesis is limited to 6 variables");

  Netlist n("F_dims");
  for (const auto& v : f.var_names()) n.add_input(v, true);
  n.add_output("F", true);

  std::vector<uint32_t> on_min, off_min;
  for (uint32_t m = 0; m < f.space_size(); ++m) {
    if (f.is_on(m)) on_min.push_back(m);
    if (f.is_off(m)) off_min.push_back(m);
  }

  auto minterm_net = [&](uint32_t m, bool direct, const std::string& rail) {
    std::string out = direct ? rail : "m" + std::to_string(m);
    std::vector<std::string> rails;
    for (int v = 0; v < f.var_count(); ++v) {
      int bit = (m >> (f.var_count() - 1 - v)) & 1;
      rails.push_back(rail_net(f.var_names()[v], bit ? Polarity::pos : Polarity::neg));
    }
    if (rails.size() == 1) {
      n.add_gate("cm" + std::to_string(m), GateKind::BUF, rails, out);
    } else {
      n.add_gate("cm" + std::to_string(m), GateKind::C, rails, out, false);
    }
    return out;
  };

  auto build_side = [&](const std::vector<uint32_t>& minterms, const std::string& rail,
                        const std::string& or_id) {
    if (minterms.empty()) return;
    bool direct = minterms.size() == 1;
    std::vector<std::string> nets;
    for (uint32_t m : minterms) nets.push_back(minterm_net(m, direct, rail));
    if (!direct) n.add_gate(or_id, GateKind::OR, nets, rail);
  };
  build_side(on_min, "F.1", "or_t");
  build_side(off_min, "F.0", "or_f");
  return n;
}

std::vector<std::string> nand_decompose_naive(Netlist& n, const std::string& gate_id,
                                              int max_fanin) {
  if (max_fanin < 2) throw std::invalid_argument("max_fanin must be at least 2");
  int gi = -1;
  for (size_t i = 0; i < n.gates().size(); ++i)
    if (n.gates()[i].id == gate_id) gi = (int)i;
  if (gi < 0) throw std::invalid_argument("no gate named '" + gate_id + "'");
  Gate g = n.gates()[gi];
  if (g.kind != GateKind::NAND) throw std::invalid_argument("naive decomposition applies to NAND");
  if ((int)g.inputs.size() <= max_fanin) return {};

  auto fresh_net = [&](int& counter) {
    std::string name;
    do {
      name = "net" + std::to_string(counter++);
    } while (n.net_id(name) >= 0);
    return name;
  };

  std::vector<std::string> remaining;
  for (NetId in : g.inputs) remaining.push_back(n.net_name(in));
  std::string out_name = n.net_name(g.output);
  n.gates().erase(n.gates().begin() + gi);

  std::vector<std::string> added;
  int net_counter = 1;
  int stage = 1;
  while ((int)remaining.size() > max_fanin) {
    std::vector<std::string> group(remaining.begin(), remaining.begin() + max_fanin);
    std::string nand_out = fresh_net(net_counter);
    std::string inv_out = fresh_net(net_counter);
    std::string m_id = "m" + std::to_string(stage);
    std::string i_id = "inv" + std::to_string(stage);
    n.add_gate(m_id, GateKind::NAND, group, nand_out);
    n.add_gate(i_id, GateKind::INV, {nand_out}, inv_out);
    added.push_back(m_id);
    added.push_back(i_id);
    std::vector<std::string> next{inv_out};
    next.insert(next.end(), remaining.begin() + max_fanin, remaining.end());
    remaining = std::move(next);
    ++stage;
  }
  std::string m_id = "m" + std::to_string(stage);
  if (remaining.size() == 1) {
    n.add_gate(m_id, GateKind::INV, remaining, out_name);
  } else {
    n.add_gate(m_id, GateKind::NAND, remaining, out_name);
  }
  added.push_back(m_id);
  return added;
}

Netlist synthesize(const BooleanFunction& f, const SynthesisOptions& opts) {
  Netlist n;
  switch (opts.method) {
    case SynthMethod::drcl: {
      n = drcl_translate(f);
      if (opts.cd_variant != CdVariant::none) build_completion_detector(n, {}, opts.cd_variant);
      break;
    }
    case SynthMethod::method1:
      n = synthesize_method1(f, opts.cd_variant == CdVariant::none ? CdVariant::or_gates
                                                                   : opts.cd_variant);
      break;
    case SynthMethod::dsop:
      n = synthesize_dsop(f);
      break;
    case SynthMethod::dims: {
      n = dims_synthesize(f);
      if (opts.cd_variant != CdVariant::none) build_completion_detector(n, {}, opts.cd_variant);
      break;
    }
  }
  if (opts.decompose_naive && opts.max_fanin >= 2) {
    std::vector<std::string> oversized;
    for (const auto& g : n.gates())
      if (g.kind == GateKind::NAND && (int)g.inputs.size() > opts.max_fanin)
        oversized.push_back(g.id);
    for (const auto& id : oversized) nand_decompose_naive(n, id, opts.max_fanin);
  }
  return n;
}

}  // namespace adw
