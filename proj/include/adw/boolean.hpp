#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

// Truth-table level Boolean machinery: functions given by ON/DC minterm sets,
// two-level covers, single-kernel factoring, disjointness algebra and DSOP
// construction, and dual-rail (two-wire-per-bit) encodings of covers.
//
// Minterm index convention used everywhere in this library: variable 0 (the
// first name) is the most significant bit of the index.  For F(a,b,c,d),
// minterm 13 = 0b1101 means a=1, b=1, c=0, d=1.

namespace adw {

struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& what)
      : std::runtime_error("line " + std::to_string(line_) + ": " + what), line(line_) {}
};

enum class Polarity : uint8_t { pos, neg };

/// A conjunction of literals over variable indices.  The empty product is the
/// constant 1; a product containing a variable in both polarities collapses to
/// the distinguished null term, which no cover may contain.
class ProductTerm {
 public:
  ProductTerm() = default;

  static ProductTerm null_term() {
    ProductTerm t;
    t.null_ = true;
    return t;
  }

  static ProductTerm one() { return ProductTerm(); }

  bool is_null() const { return null_; }
  bool is_one() const { return !null_ && pos_ == 0 && neg_ == 0; }

  /// Adds a literal; returns the null term when the opposite polarity of the
  /// same variable is already present.
  ProductTerm with(int var, Polarity p) const;

  bool has(int var) const { return ((pos_ | neg_) >> var) & 1u; }
  Polarity polarity_of(int var) const {
    return ((pos_ >> var) & 1u) ? Polarity::pos : Polarity::neg;
  }

  uint32_t pos_mask() const { return pos_; }
  uint32_t neg_mask() const { return neg_; }
  int literal_count() const;

  /// True when the term evaluates to 1 on the given minterm (var 0 = MSB).
  bool evaluates(uint32_t minterm, int var_count) const;

  friend bool operator==(const ProductTerm& a, const ProductTerm& b) {
    return a.null_ == b.null_ && a.pos_ == b.pos_ && a.neg_ == b.neg_;
  }
  friend bool operator!=(const ProductTerm& a, const ProductTerm& b) { return !(a == b); }

  /// Canonical order: by lowest variable index, then polarity, used to keep
  /// generated covers stable across runs.
  friend bool operator<(const ProductTerm& a, const ProductTerm& b);

 private:
  uint32_t pos_ = 0;
  uint32_t neg_ = 0;
  bool null_ = false;
};

/// Conjunction of two terms; null when any variable appears with opposite
/// polarities.
ProductTerm conjoin(const ProductTerm& a, const ProductTerm& b);

/// True iff conjoin(a, b) is null.
bool terms_disjoint(const ProductTerm& a, const ProductTerm& b);

/// Product of a prefix term with a sum-of-terms kernel, e.g. (a' + b')c.
struct FactoredNode {
  ProductTerm prefix;
  std::vector<ProductTerm> kernel;
};

using SopNode = std::variant<ProductTerm, FactoredNode>;

/// A sum of nodes, each a plain product term or a single-kernel factored
/// product.  Carries its variable universe; rail_notation switches printing
/// between a/a' and a1/a0.
class SopExpression {
 public:
  SopExpression() = default;
  SopExpression(int var_count, std::vector<std::string> names, bool rail_notation = false);
  explicit SopExpression(int var_count, bool rail_notation = false);

  int var_count() const { return var_count_; }
  const std::vector<std::string>& var_names() const { return names_; }
  bool rail_notation() const { return rail_notation_; }
  void set_rail_notation(bool v) { rail_notation_ = v; }

  void add_term(const ProductTerm& t);
  void add_factored(const ProductTerm& prefix, std::vector<ProductTerm> kernel);

  const std::vector<SopNode>& nodes() const { return nodes_; }
  bool empty() const { return nodes_.empty(); }

  bool evaluate(uint32_t minterm) const;

  /// Evaluates the expression over independent rail wires: bit (2*i) of
  /// rail_bits is variable i's false rail, bit (2*i + 1) its true rail.  On a
  /// complete codeword this agrees with evaluate(); on partial codewords it
  /// gives the monotone partial evaluation a gate network would produce.
  bool evaluate_rails(uint64_t rail_bits) const;

  /// Flat term list with every factored node multiplied out.
  std::vector<ProductTerm> flat_terms() const;

  size_t term_count() const { return flat_terms().size(); }
  int literal_count() const;

  std::string term_to_string(const ProductTerm& t) const;
  std::string to_string() const;

 private:
  int var_count_ = 0;
  std::vector<std::string> names_;
  bool rail_notation_ = false;
  std::vector<SopNode> nodes_;
};

/// Truth-table function spec: ON-set plus optional don't-care set; the
/// OFF-set is always derived as the complement.
class BooleanFunction {
 public:
  BooleanFunction() = default;

  int var_count() const { return var_count_; }
  const std::vector<std::string>& var_names() const { return names_; }
  uint32_t space_size() const { return 1u << var_count_; }

  bool is_on(uint32_t m) const { return table_[m] == 1; }
  bool is_dc(uint32_t m) const { return table_[m] == 2; }
  bool is_off(uint32_t m) const { return table_[m] == 0; }
  bool is_care(uint32_t m) const { return table_[m] != 2; }

  std::vector<uint32_t> on_set() const;
  std::vector<uint32_t> dc_set() const;

  friend BooleanFunction function_from_spec(int var_count, const std::vector<uint32_t>& on_set,
                                            const std::vector<uint32_t>& dc_set,
                                            std::vector<std::string> names);

 private:
  int var_count_ = 0;
  std::vector<std::string> names_;
  std::vector<uint8_t> table_;  // 0 = off, 1 = on, 2 = dc
};

/// Builds a normalized function, checking index ranges and on/dc disjointness.
/// Empty names default to a, b, c, ...
BooleanFunction function_from_spec(int var_count, const std::vector<uint32_t>& on_set,
                                   const std::vector<uint32_t>& dc_set = {},
                                   std::vector<std::string> names = {});

/// Reads the line-oriented spec format: `vars N`, `names ...` (optional),
/// `on i j ...`, `dc i j ...` (optional), `#` comments.
BooleanFunction parse_function_spec(std::istream& in);
BooleanFunction parse_function_spec_file(const std::string& path);

enum class CoverPolarity { on, off };

/// Quine-McCluskey prime generation plus exact minimum cover of the chosen
/// set.  Don't-cares are usable by either polarity.  Deterministic: primes and
/// branch-and-bound choices are explored in canonical term order.
SopExpression minimize_cover(const BooleanFunction& f, CoverPolarity polarity);

/// Extracts the single common literal with the largest literal saving, e.g.
/// a'c + b'c + c'd -> (a' + b')c + c'd.  Returns the input unchanged when no
/// extraction saves literals.
SopExpression factor_single_kernel(const SopExpression& expr);

/// Multiplies out every factored node; the result is truth-table equal.
SopExpression expand_factored(const SopExpression& expr);

struct DsopVerdict {
  bool disjoint;
  // First offending pair, in term index order, when not disjoint.
  std::optional<std::pair<ProductTerm, ProductTerm>> witness;
};

/// Pairwise-disjointness check on the expanded term list.
DsopVerdict is_dsop(const SopExpression& expr);

/// Rewrites a cover into disjoint form.  Term pairs are processed in index
/// order and the later term of an overlapping pair is split against the
/// earlier one, so e.g. ac + bc + dc' becomes ac + a'bc + dc'.
SopExpression sop_to_dsop(const SopExpression& expr);

enum class DualRailMode { onoff, drcl };

struct DualRailExpression {
  SopExpression true_rail;
  SopExpression false_rail;
  // Dc minterms claimed by both covers (onoff mode); informational.
  std::vector<uint32_t> overlap_warnings;
};

/// onoff: both rails minimized independently from the ON and OFF sets.
/// drcl: the false rail is the De Morgan dual of the true rail, multiplied
/// back out to sum-of-products form.
DualRailExpression dual_rail_encode(const BooleanFunction& f, DualRailMode mode);

/// Exhaustive truth-table comparison (var_count <= 24).  Throws on a variable
/// universe mismatch.
bool equivalent(const SopExpression& a, const SopExpression& b);

/// Expression text: terms joined by `+`, literals `a` / `a'` or rails
/// `a1` / `a0`, kernels in parentheses (square brackets also accepted), e.g.
/// "c(a+b)+dc'" or "[a0+b0]c1+c0d1".
SopExpression parse_expression(const std::string& text, bool rail_notation = false);

/// a(1) / a(0) walkthrough-style name for a rail literal.
std::string rail_display(const std::string& var, Polarity p);

}  // namespace adw
