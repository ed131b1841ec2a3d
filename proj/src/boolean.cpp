#include "adw/boolean.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace adw {

ProductTerm ProductTerm::with(int var, Polarity p) const {
  if (null_) return *this;
  ProductTerm t = *this;
  uint32_t bit = 1u << var;
  if (p == Polarity::pos) {
    if (neg_ & bit) return null_term();
    t.pos_ |= bit;
  } else {
    if (pos_ & bit) return null_term();
    t.neg_ |= bit;
  }
  return t;
}

int ProductTerm::literal_count() const {
  if (null_) return 0;
  return std::popcount(pos_) + std::popcount(neg_);
}

bool ProductTerm::evaluates(uint32_t minterm, int var_count) const {
  if (null_) return false;
  // Map var-indexed masks into minterm bit positions (var 0 = MSB).
  for (int v = 0; v < var_count; ++v) {
    uint32_t bit = 1u << v;
    if (!((pos_ | neg_) & bit)) continue;
    bool value = (minterm >> (var_count - 1 - v)) & 1u;
    if ((pos_ & bit) && !value) return false;
    if ((neg_ & bit) && value) return false;
  }
  return true;
}

bool operator<(const ProductTerm& a, const ProductTerm& b) {
  if (a.null_ != b.null_) return b.null_;
  uint32_t avars = a.pos_ | a.neg_, bvars = b.pos_ | b.neg_;
  while (avars || bvars) {
    int av = avars ? std::countr_zero(avars) : 32;
    int bv = bvars ? std::countr_zero(bvars) : 32;
    if (av != bv) return av < bv;
    bool apos = (a.pos_ >> av) & 1u, bpos = (b.pos_ >> bv) & 1u;
    if (apos != bpos) return apos;  // positive literal sorts first
    avars &= avars - 1;
    bvars &= bvars - 1;
  }
  return false;
}

ProductTerm conjoin(const ProductTerm& a, const ProductTerm& b) {
  if (a.is_null() || b.is_null()) return ProductTerm::null_term();
  if ((a.pos_mask() & b.neg_mask()) || (a.neg_mask() & b.pos_mask()))
    return ProductTerm::null_term();
  ProductTerm t = a;
  for (uint32_t m = b.pos_mask(); m; m &= m - 1) t = t.with(std::countr_zero(m), Polarity::pos);
  for (uint32_t m = b.neg_mask(); m; m &= m - 1) t = t.with(std::countr_zero(m), Polarity::neg);
  return t;
}

bool terms_disjoint(const ProductTerm& a, const ProductTerm& b) {
  return conjoin(a, b).is_null();
}

static std::vector<std::string> default_names(int var_count) {
  std::vector<std::string> names;
  names.reserve(var_count);
  for (int i = 0; i < var_count; ++i) {
    if (var_count <= 26) {
      names.push_back(std::string(1, char('a' + i)));
    } else {
      names.push_back("x" + std::to_string(i));
    }
  }
  return names;
}

SopExpression::SopExpression(int var_count, std::vector<std::string> names, bool rail_notation)
    : var_count_(var_count), names_(std::move(names)), rail_notation_(rail_notation) {
  if (names_.empty()) names_ = default_names(var_count);
  if ((int)names_.size() != var_count)
    throw std::invalid_argument("variable name count does not match var_count");
}

SopExpression::SopExpression(int var_count, bool rail_notation)
    : SopExpression(var_count, default_names(var_count), rail_notation) {}

void SopExpression::add_term(const ProductTerm& t) {
  if (t.is_null()) throw std::invalid_argument("null term cannot join a cover");
  nodes_.push_back(t);
}

void SopExpression::add_factored(const ProductTerm& prefix, std::vector<ProductTerm> kernel) {
  if (prefix.is_null()) throw std::invalid_argument("null prefix in factored node");
  for (const auto& k : kernel)
    if (k.is_null()) throw std::invalid_argument("null term in kernel");
  nodes_.push_back(FactoredNode{prefix, std::move(kernel)});
}

std::vector<ProductTerm> SopExpression::flat_terms() const {
  std::vector<ProductTerm> out;
  for (const auto& node : nodes_) {
    if (std::holds_alternative<ProductTerm>(node)) {
      out.push_back(std::get<ProductTerm>(node));
    } else {
      const auto& f = std::get<FactoredNode>(node);
      for (const auto& k : f.kernel) {
        ProductTerm t = conjoin(f.prefix, k);
        if (!t.is_null()) out.push_back(t);
      }
    }
  }
  return out;
}

bool SopExpression::evaluate(uint32_t minterm) const {
  for (const auto& node : nodes_) {
    if (std::holds_alternative<ProductTerm>(node)) {
      if (std::get<ProductTerm>(node).evaluates(minterm, var_count_)) return true;
    } else {
      const auto& f = std::get<FactoredNode>(node);
      if (!f.prefix.evaluates(minterm, var_count_)) continue;
      for (const auto& k : f.kernel)
        if (k.evaluates(minterm, var_count_)) return true;
    }
  }
  return false;
}

static bool term_true_on_rails(const ProductTerm& t, uint64_t rail_bits) {
  if (t.is_null()) return false;
  for (uint32_t m = t.pos_mask(); m; m &= m - 1) {
    int v = std::countr_zero(m);
    if (!((rail_bits >> (2 * v + 1)) & 1u)) return false;
  }
  for (uint32_t m = t.neg_mask(); m; m &= m - 1) {
    int v = std::countr_zero(m);
    if (!((rail_bits >> (2 * v)) & 1u)) return false;
  }
  return true;
}

bool SopExpression::evaluate_rails(uint64_t rail_bits) const {
  for (const auto& t : flat_terms())
    if (term_true_on_rails(t, rail_bits)) return true;
  return false;
}

int SopExpression::literal_count() const {
  int n = 0;
  for (const auto& node : nodes_) {
    if (std::holds_alternative<ProductTerm>(node)) {
      n += std::get<ProductTerm>(node).literal_count();
    } else {
      const auto& f = std::get<FactoredNode>(node);
      n += f.prefix.literal_count();
      for (const auto& k : f.kernel) n += k.literal_count();
    }
  }
  return n;
}

std::string SopExpression::term_to_string(const ProductTerm& t) const {
  if (t.is_null()) return "0";
  if (t.is_one()) return "1";
  std::string s;
  for (int v = 0; v < var_count_; ++v) {
    if (!t.has(v)) continue;
    bool pos = t.polarity_of(v) == Polarity::pos;
    if (rail_notation_) {
      s += names_[v] + (pos ? "1" : "0");
    } else {
      s += names_[v] + (pos ? "" : "'");
    }
  }
  return s;
}

std::string SopExpression::to_string() const {
  if (nodes_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& node : nodes_) {
    if (!first) s += " + ";
    first = false;
    if (std::holds_alternative<ProductTerm>(node)) {
      s += term_to_string(std::get<ProductTerm>(node));
    } else {
      const auto& f = std::get<FactoredNode>(node);
      s += "(";
      for (size_t i = 0; i < f.kernel.size(); ++i) {
        if (i) s += " + ";
        s += term_to_string(f.kernel[i]);
      }
      s += ")";
      if (!f.prefix.is_one()) s += term_to_string(f.prefix);
    }
  }
  return s;
}

std::vector<uint32_t> BooleanFunction::on_set() const {
  std::vector<uint32_t> out;
  for (uint32_t m = 0; m < space_size(); ++m)
    if (table_[m] == 1) out.push_back(m);
  return out;
}

std::vector<uint32_t> BooleanFunction::dc_set() const {
  std::vector<uint32_t> out;
  for (uint32_t m = 0; m < space_size(); ++m)
    if (table_[m] == 2) out.push_back(m);
  return out;
}

BooleanFunction function_from_spec(int var_count, const std::vector<uint32_t>& on_set,
                                   const std::vector<uint32_t>& dc_set,
                                   std::vector<std::string> names) {
  if (var_count < 1 || var_count > 20)
    throw std::invalid_argument("var_count must be in [1, 20]");
  BooleanFunction f;
  f.var_count_ = var_count;
  f.names_ = names.empty() ? default_names(var_count) : std::move(names);
  if ((int)f.names_.size() != var_count)
    throw std::invalid_argument("variable name count does not match var_count");
  f.table_.assign(1u << var_count, 0);
  for (uint32_t m : on_set) {
    if (m >= f.table_.size()) throw std::invalid_argument("on-set index out of range");
    f.table_[m] = 1;
  }
  for (uint32_t m : dc_set) {
    if (m >= f.table_.size()) throw std::invalid_argument("dc-set index out of range");
    if (f.table_[m] == 1) throw std::invalid_argument("on-set and dc-set overlap");
    f.table_[m] = 2;
  }
  return f;
}

BooleanFunction parse_function_spec(std::istream& in) {
  int var_count = -1;
  std::vector<std::string> names;
  std::vector<uint32_t> on, dc;
  bool saw_on = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    if (key == "vars") {
      if (!(ls >> var_count)) throw ParseError(lineno, "expected variable count after 'vars'");
    } else if (key == "names") {
      std::string n;
      while (ls >> n) names.push_back(n);
    } else if (key == "on" || key == "dc") {
      auto& dest = (key == "on") ? on : dc;
      if (key == "on") saw_on = true;
      long v;
      while (ls >> v) {
        if (v < 0) throw ParseError(lineno, "negative minterm index");
        dest.push_back((uint32_t)v);
      }
      if (!ls.eof()) throw ParseError(lineno, "bad minterm index in '" + key + "' line");
    } else {
      throw ParseError(lineno, "unknown directive '" + key + "'");
    }
  }
  if (var_count < 0) throw ParseError(lineno, "missing 'vars' line");
  if (!saw_on) throw ParseError(lineno, "missing 'on' line");
  try {
    return function_from_spec(var_count, on, dc, names);
  } catch (const std::invalid_argument& e) {
    throw ParseError(lineno, e.what());
  }
}

BooleanFunction parse_function_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_function_spec(in);
}

SopExpression expand_factored(const SopExpression& expr) {
  SopExpression out(expr.var_count(), expr.var_names(), expr.rail_notation());
  for (const auto& t : expr.flat_terms()) out.add_term(t);
  return out;
}

SopExpression factor_single_kernel(const SopExpression& expr) {
  SopExpression flat = expand_factored(expr);
  const auto terms = flat.flat_terms();
  if (terms.size() < 2) return flat;

  // Count occurrences of every literal; best divisor = most shared terms.
  int best_var = -1;
  Polarity best_pol = Polarity::pos;
  size_t best_count = 1;
  for (int v = 0; v < flat.var_count(); ++v) {
    for (Polarity p : {Polarity::pos, Polarity::neg}) {
      size_t count = 0;
      for (const auto& t : terms)
        if (t.has(v) && t.polarity_of(v) == p) ++count;
      if (count > best_count) {
        best_count = count;
        best_var = v;
        best_pol = p;
      }
    }
  }
  if (best_var < 0) return flat;

  ProductTerm prefix = ProductTerm().with(best_var, best_pol);
  std::vector<ProductTerm> kernel;
  std::vector<std::pair<bool, ProductTerm>> layout;  // (is_kernel_slot, term)
  for (const auto& t : terms) {
    if (t.has(best_var) && t.polarity_of(best_var) == best_pol) {
      ProductTerm quotient;
      for (int v = 0; v < flat.var_count(); ++v)
        if (v != best_var && t.has(v)) quotient = quotient.with(v, t.polarity_of(v));
      if (kernel.empty()) layout.emplace_back(true, ProductTerm());
      kernel.push_back(quotient);
    } else {
      layout.emplace_back(false, t);
    }
  }
  SopExpression result(flat.var_count(), flat.var_names(), flat.rail_notation());
  for (const auto& [is_kernel, t] : layout) {
    if (is_kernel) {
      result.add_factored(prefix, kernel);
    } else {
      result.add_term(t);
    }
  }
  return result;
}

DsopVerdict is_dsop(const SopExpression& expr) {
  const auto terms = expr.flat_terms();
  for (size_t i = 0; i < terms.size(); ++i) {
    for (size_t j = i + 1; j < terms.size(); ++j) {
      if (!terms_disjoint(terms[i], terms[j]))
        return DsopVerdict{false, std::make_pair(terms[i], terms[j])};
    }
  }
  return DsopVerdict{true, std::nullopt};
}

SopExpression sop_to_dsop(const SopExpression& expr) {
  std::vector<ProductTerm> terms = expand_factored(expr).flat_terms();
  // Split the later term of the first overlapping pair until all pairs are
  // disjoint.  Terminates: every split strictly shrinks total minterm
  // coverage multiplicity.
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < terms.size() && !changed; ++i) {
      for (size_t j = i + 1; j < terms.size() && !changed; ++j) {
        if (terms_disjoint(terms[i], terms[j])) continue;
        // Replace terms[j] with the disjoint expansion of terms[j] & !terms[i].
        std::vector<ProductTerm> pieces;
        ProductTerm accum = terms[j];
        const ProductTerm& ti = terms[i];
        for (int v = 0; v < expr.var_count(); ++v) {
          if (!ti.has(v) || terms[j].has(v)) continue;
          Polarity p = ti.polarity_of(v);
          Polarity np = (p == Polarity::pos) ? Polarity::neg : Polarity::pos;
          pieces.push_back(accum.with(v, np));
          accum = accum.with(v, p);
        }
        terms.erase(terms.begin() + j);
        terms.insert(terms.begin() + j, pieces.begin(), pieces.end());
        changed = true;
      }
    }
  }
  SopExpression out(expr.var_count(), expr.var_names(), expr.rail_notation());
  for (const auto& t : terms) out.add_term(t);
  return out;
}

static ProductTerm complement_literal(int var, Polarity p) {
  return ProductTerm().with(var, p == Polarity::pos ? Polarity::neg : Polarity::pos);
}

// De Morgan dual of an SOP, multiplied back out to SOP with null terms
// dropped and absorbed terms removed.
static SopExpression demorgan_dual(const SopExpression& expr) {
  SopExpression out(expr.var_count(), expr.var_names(), expr.rail_notation());
  const auto terms = expr.flat_terms();
  if (terms.empty()) {
    out.add_term(ProductTerm::one());  // complement of constant 0
    return out;
  }
  std::vector<ProductTerm> products{ProductTerm::one()};
  for (const auto& t : terms) {
    if (t.is_one()) return out;  // complement of a tautology: empty sum
    std::vector<ProductTerm> next;
    for (const auto& p : products) {
      for (int v = 0; v < expr.var_count(); ++v) {
        if (!t.has(v)) continue;
        ProductTerm q = conjoin(p, complement_literal(v, t.polarity_of(v)));
        if (!q.is_null()) next.push_back(q);
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    products = std::move(next);
  }
  // Drop terms absorbed by a weaker term (t absorbed by u when u's literals
  // are a strict subset of t's; duplicates were removed above).
  std::vector<ProductTerm> kept;
  for (size_t i = 0; i < products.size(); ++i) {
    bool absorbed = false;
    for (size_t j = 0; j < products.size() && !absorbed; ++j) {
      if (i == j) continue;
      const auto& t = products[i];
      const auto& u = products[j];
      absorbed = (u.pos_mask() & ~t.pos_mask()) == 0 && (u.neg_mask() & ~t.neg_mask()) == 0;
    }
    if (!absorbed) kept.push_back(products[i]);
  }
  for (const auto& t : kept) out.add_term(t);
  return out;
}

DualRailExpression dual_rail_encode(const BooleanFunction& f, DualRailMode mode) {
  DualRailExpression d;
  SopExpression on_cover = minimize_cover(f, CoverPolarity::on);
  on_cover.set_rail_notation(true);
  d.true_rail = on_cover;
  if (mode == DualRailMode::onoff) {
    SopExpression off_cover = minimize_cover(f, CoverPolarity::off);
    off_cover.set_rail_notation(true);
    d.false_rail = off_cover;
    for (uint32_t m = 0; m < f.space_size(); ++m)
      if (f.is_dc(m) && d.true_rail.evaluate(m) && d.false_rail.evaluate(m))
        d.overlap_warnings.push_back(m);
  } else {
    d.false_rail = demorgan_dual(on_cover);
    d.false_rail.set_rail_notation(true);
  }
  return d;
}

bool equivalent(const SopExpression& a, const SopExpression& b) {
  if (a.var_count() != b.var_count() || a.var_names() != b.var_names())
    throw std::invalid_argument("expression variable universes differ");
  if (a.var_count() > 24) throw std::invalid_argument("universe too large for enumeration");
  const uint32_t space = 1u << a.var_count();
  bool equal = true;
#pragma omp parallel for reduction(&& : equal) schedule(static) if (space >= (1u << 16))
  for (int64_t m = 0; m < (int64_t)space; ++m) {
    if (a.evaluate((uint32_t)m) != b.evaluate((uint32_t)m)) equal = false;
  }
  return equal;
}

std::string rail_display(const std::string& var, Polarity p) {
  return var + (p == Polarity::pos ? "(1)" : "(0)");
}

// ---------------------------------------------------------------------------
// Expression parsing

namespace {

struct ExprParser {
  const std::string& text;
  size_t pos = 0;
  bool rails;

  explicit ExprParser(const std::string& t, bool rails_) : text(t), rails(rails_) {}

  void skip_ws() {
    while (pos < text.size() && std::isspace((unsigned char)text[pos])) ++pos;
  }

  bool peek(char c) {
    skip_ws();
    return pos < text.size() && text[pos] == c;
  }

  bool eat(char c) {
    if (peek(c)) {
      ++pos;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(1, msg + " at column " + std::to_string(pos + 1));
  }

  // literal := letter ( "'" | "0" | "1" )?
  // A trailing 0/1 digit is a rail suffix naming the polarity.
  std::pair<int, Polarity> parse_literal(std::map<char, int>& vars) {
    skip_ws();
    if (pos >= text.size() || !std::isalpha((unsigned char)text[pos])) fail("expected variable");
    char name = text[pos++];
    Polarity p = Polarity::pos;
    if (pos < text.size() && text[pos] == '\'') {
      p = Polarity::neg;
      ++pos;
    } else if (pos < text.size() && (text[pos] == '0' || text[pos] == '1')) {
      p = (text[pos] == '1') ? Polarity::pos : Polarity::neg;
      rails = true;
      ++pos;
    }
    auto it = vars.find(name);
    if (it == vars.end()) it = vars.emplace(name, (int)vars.size()).first;
    return {it->second, p};
  }

  struct RawTerm {
    std::vector<std::pair<int, Polarity>> literals;
    std::vector<std::vector<std::vector<std::pair<int, Polarity>>>> kernels;  // sums of products
  };

  std::vector<std::vector<std::pair<int, Polarity>>> parse_sum(std::map<char, int>& vars,
                                                               char close);

  RawTerm parse_term(std::map<char, int>& vars) {
    RawTerm t;
    while (true) {
      skip_ws();
      if (pos >= text.size()) break;
      char c = text[pos];
      if (c == '(' || c == '[') {
        ++pos;
        t.kernels.push_back(parse_sum(vars, c == '(' ? ')' : ']'));
      } else if (std::isalpha((unsigned char)c)) {
        t.literals.push_back(parse_literal(vars));
      } else {
        break;
      }
    }
    if (t.literals.empty() && t.kernels.empty()) fail("expected product term");
    return t;
  }
};

std::vector<std::vector<std::pair<int, Polarity>>> ExprParser::parse_sum(std::map<char, int>& vars,
                                                                         char close) {
  std::vector<std::vector<std::pair<int, Polarity>>> terms;
  while (true) {
    RawTerm t = parse_term(vars);
    if (!t.kernels.empty()) fail("nested kernels are not supported");
    terms.push_back(t.literals);
    skip_ws();
    if (eat('+')) continue;
    if (close && eat(close)) break;
    if (!close) break;
    fail(std::string("expected '+' or '") + close + "'");
  }
  return terms;
}

}  // namespace

SopExpression parse_expression(const std::string& text, bool rail_notation) {
  ExprParser p(text, rail_notation);
  std::map<char, int> vars;

  struct ParsedTerm {
    ExprParser::RawTerm raw;
  };
  std::vector<ExprParser::RawTerm> raw_terms;
  while (true) {
    raw_terms.push_back(p.parse_term(vars));
    p.skip_ws();
    if (p.eat('+')) continue;
    break;
  }
  p.skip_ws();
  if (p.pos != p.text.size()) p.fail("trailing input");
  if (vars.empty()) p.fail("no variables");

  std::vector<std::string> names;
  for (const auto& [ch, idx] : vars) {
    (void)idx;
    names.push_back(std::string(1, ch));
  }
  // std::map iterates in alphabetical order; indices were assigned in
  // encounter order, so remap them alphabetically for canonical printing.
  std::map<int, int> remap;
  {
    int next = 0;
    for (const auto& [ch, idx] : vars) remap[idx] = next++;
  }

  SopExpression out((int)vars.size(), names, p.rails);
  for (const auto& raw : raw_terms) {
    ProductTerm prefix;
    for (auto [v, pol] : raw.literals) {
      prefix = prefix.with(remap[v], pol);
      if (prefix.is_null()) throw ParseError(1, "term contains a variable in both polarities");
    }
    auto kernel_terms = [&](const std::vector<std::vector<std::pair<int, Polarity>>>& kt) {
      std::vector<ProductTerm> ks;
      for (const auto& lits : kt) {
        ProductTerm k;
        for (auto [v, pol] : lits) k = k.with(remap[v], pol);
        if (!k.is_null()) ks.push_back(k);
      }
      return ks;
    };
    if (raw.kernels.empty()) {
      out.add_term(prefix);
    } else if (raw.kernels.size() == 1) {
      out.add_factored(prefix, kernel_terms(raw.kernels[0]));
    } else {
      // Multiple kernels in one product: multiply all but the first into
      // plain terms, keeping the result single-kernel.
      std::vector<ProductTerm> acc = kernel_terms(raw.kernels[0]);
      for (size_t k = 1; k < raw.kernels.size(); ++k) {
        std::vector<ProductTerm> next;
        for (const auto& a : acc)
          for (const auto& b : kernel_terms(raw.kernels[k])) {
            ProductTerm q = conjoin(a, b);
            if (!q.is_null()) next.push_back(q);
          }
        acc = std::move(next);
      }
      for (const auto& t : acc) {
        ProductTerm q = conjoin(prefix, t);
        if (!q.is_null()) out.add_term(q);
      }
    }
  }
  return out;
}

}  // namespace adw
