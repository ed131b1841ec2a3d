#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "adw/boolean.hpp"

using namespace adw;

// Independent oracle: evaluate an expression by walking literals directly,
// with no shared code path through the cover algebra under test.
namespace {

bool oracle_eval_term(const ProductTerm& t, uint32_t minterm, int var_count) {
  if (t.is_null()) return false;
  for (int v = 0; v < var_count; ++v) {
    if (!t.has(v)) continue;
    int bit = (minterm >> (var_count - 1 - v)) & 1;
    if (t.polarity_of(v) == Polarity::pos && bit == 0) return false;
    if (t.polarity_of(v) == Polarity::neg && bit == 1) return false;
  }
  return true;
}

bool oracle_eval(const SopExpression& e, uint32_t minterm) {
  for (const auto& node : e.nodes()) {
    if (std::holds_alternative<ProductTerm>(node)) {
      if (oracle_eval_term(std::get<ProductTerm>(node), minterm, e.var_count())) return true;
    } else {
      const auto& f = std::get<FactoredNode>(node);
      if (!oracle_eval_term(f.prefix, minterm, e.var_count())) continue;
      for (const auto& k : f.kernel)
        if (oracle_eval_term(k, minterm, e.var_count())) return true;
    }
  }
  return false;
}

bool oracle_same_on_care(const BooleanFunction& f, const SopExpression& cover, bool off_side) {
  for (uint32_t m = 0; m < f.space_size(); ++m) {
    if (f.is_dc(m)) continue;
    bool want = off_side ? f.is_off(m) : f.is_on(m);
    if (oracle_eval(cover, m) != want) return false;
  }
  return true;
}

BooleanFunction exemplar_f() {
  return function_from_spec(4, {1, 2, 3, 5, 6, 7, 9, 10, 11, 13});
}

BooleanFunction random_function(std::mt19937& rng, int vars) {
  std::uniform_int_distribution<int> bit(0, 1);
  std::vector<uint32_t> on;
  for (uint32_t m = 0; m < (1u << vars); ++m)
    if (bit(rng)) on.push_back(m);
  return function_from_spec(vars, on);
}

SopExpression random_sop(std::mt19937& rng, int vars, int max_terms) {
  std::uniform_int_distribution<int> nterms(1, max_terms);
  std::uniform_int_distribution<int> pick(0, 2);
  SopExpression e(vars);
  int n = nterms(rng);
  for (int i = 0; i < n; ++i) {
    ProductTerm t;
    bool empty = true;
    for (int v = 0; v < vars; ++v) {
      int c = pick(rng);
      if (c == 0) continue;
      t = t.with(v, c == 1 ? Polarity::pos : Polarity::neg);
      empty = false;
    }
    if (empty) t = t.with(std::uniform_int_distribution<int>(0, vars - 1)(rng), Polarity::pos);
    e.add_term(t);
  }
  return e;
}

}  // namespace

TEST_CASE("function_from_spec builds and checks the exemplar function") {
  auto f = exemplar_f();
  CHECK(f.var_count() == 4);
  CHECK(f.on_set() == std::vector<uint32_t>{1, 2, 3, 5, 6, 7, 9, 10, 11, 13});
  CHECK(f.is_off(0));
  CHECK(f.is_off(15));
  CHECK(f.is_on(13));

  auto zero = function_from_spec(1, {});
  CHECK(zero.on_set().empty());
  auto one = function_from_spec(3, {0, 1, 2, 3, 4, 5, 6, 7});
  CHECK(one.on_set().size() == 8);

  CHECK_THROWS_AS(function_from_spec(2, {4}), std::invalid_argument);
  CHECK_THROWS_AS(function_from_spec(2, {1}, {1}), std::invalid_argument);
}

TEST_CASE("spec file parsing") {
  std::istringstream in(
      "# exemplar function\n"
      "vars 4\n"
      "names a b c d\n"
      "on 1 2 3 5 6 7 9 10 11 13\n");
  auto f = parse_function_spec(in);
  CHECK(f.var_names() == std::vector<std::string>{"a", "b", "c", "d"});
  CHECK(f.on_set().size() == 10);

  std::istringstream bad("vars 2\non 1 x\n");
  CHECK_THROWS_AS(parse_function_spec(bad), ParseError);
}

TEST_CASE("minimize_cover reproduces both minimized covers of F") {
  auto f = exemplar_f();

  auto on_cover = minimize_cover(f, CoverPolarity::on);
  CHECK(on_cover.term_count() == 3);
  CHECK(on_cover.to_string() == "a'c + b'c + c'd");
  CHECK(oracle_same_on_care(f, on_cover, false));

  auto off_cover = minimize_cover(f, CoverPolarity::off);
  CHECK(off_cover.term_count() == 2);
  CHECK(off_cover.to_string() == "abc + c'd'");
  CHECK(oracle_same_on_care(f, off_cover, true));
}

TEST_CASE("minimize_cover edge covers") {
  auto zero = function_from_spec(1, {});
  CHECK(minimize_cover(zero, CoverPolarity::on).empty());
  CHECK(minimize_cover(zero, CoverPolarity::on).to_string() == "0");

  auto one = function_from_spec(3, {0, 1, 2, 3, 4, 5, 6, 7});
  auto cover = minimize_cover(one, CoverPolarity::on);
  CHECK(cover.term_count() == 1);
  CHECK(cover.to_string() == "1");
}

TEST_CASE("minimize_cover agrees with the enumeration oracle on random functions") {
  std::mt19937 rng(20160134);
  for (int iter = 0; iter < 200; ++iter) {
    int vars = 2 + (iter % 3);
    auto f = random_function(rng, vars);
    auto on_cover = minimize_cover(f, CoverPolarity::on);
    auto off_cover = minimize_cover(f, CoverPolarity::off);
    REQUIRE(oracle_same_on_care(f, on_cover, false));
    REQUIRE(oracle_same_on_care(f, off_cover, true));
  }
}

TEST_CASE("minimize_cover uses don't-cares") {
  // ON = {3}, DC = {1, 2}: the single prime covering 3 can absorb dc minterms.
  auto f = function_from_spec(2, {3}, {1, 2});
  auto cover = minimize_cover(f, CoverPolarity::on);
  CHECK(oracle_same_on_care(f, cover, false));
  CHECK(cover.term_count() == 1);
  CHECK(cover.literal_count() == 1);  // a or b alone, dc expands the prime
}

TEST_CASE("factor_single_kernel extracts the shared literal") {
  auto f = exemplar_f();
  auto on_cover = minimize_cover(f, CoverPolarity::on);
  auto factored = factor_single_kernel(on_cover);
  CHECK(factored.to_string() == "(a' + b')c + c'd");
  CHECK(factored.literal_count() == 5);
  CHECK(equivalent(factored, on_cover));

  auto off_cover = minimize_cover(f, CoverPolarity::off);
  auto off_factored = factor_single_kernel(off_cover);
  CHECK(off_factored.to_string() == off_cover.to_string());

  auto single = parse_expression("ab");
  CHECK(factor_single_kernel(single).to_string() == "ab");
}

TEST_CASE("expand_factored flattens and preserves the truth table") {
  auto e = parse_expression("c(a+b)+dc'");
  auto flat = expand_factored(e);
  CHECK(flat.to_string() == "ac + bc + c'd");
  for (uint32_t m = 0; m < 16; ++m) CHECK(oracle_eval(e, m) == oracle_eval(flat, m));

  auto eq3 = parse_expression("(a'+b')c+c'd");
  auto flat3 = expand_factored(eq3);
  CHECK(flat3.to_string() == "a'c + b'c + c'd");

  auto plain = parse_expression("ab+cd");
  CHECK(expand_factored(plain).to_string() == plain.to_string());
}

TEST_CASE("expand_factored property: truth tables equal on random factored forms") {
  std::mt19937 rng(77);
  for (int iter = 0; iter < 200; ++iter) {
    int vars = 2 + (iter % 4);
    auto base = random_sop(rng, vars, 4);
    auto factored = factor_single_kernel(base);
    auto flat = expand_factored(factored);
    for (uint32_t m = 0; m < (1u << vars); ++m) {
      REQUIRE(oracle_eval(base, m) == oracle_eval(factored, m));
      REQUIRE(oracle_eval(base, m) == oracle_eval(flat, m));
    }
  }
}

TEST_CASE("terms_disjoint") {
  auto ac = parse_expression("ac").flat_terms()[0];
  auto bc = parse_expression("bc").flat_terms()[0];
  CHECK_FALSE(terms_disjoint(ac, bc));

  auto e = parse_expression("ac+a'bc");
  CHECK(terms_disjoint(e.flat_terms()[0], e.flat_terms()[1]));

  CHECK_FALSE(terms_disjoint(ac, ac));
}

TEST_CASE("is_dsop verdicts from the worked examples") {
  // Kernel form: not a DSOP, witness comes from the kernel expansion.
  auto eq4 = parse_expression("[a0+b0]c1+c0d1");
  auto v4 = is_dsop(eq4);
  CHECK_FALSE(v4.disjoint);
  REQUIRE(v4.witness.has_value());
  CHECK(eq4.term_to_string(v4.witness->first) == "a0c1");
  CHECK(eq4.term_to_string(v4.witness->second) == "b0c1");

  auto corrected = parse_expression("a0b1c1+b0c1+c0d1");
  CHECK(is_dsop(corrected).disjoint);

  auto eq2 = parse_expression("abc+c'd'");
  CHECK(is_dsop(eq2).disjoint);

  auto kernel_demo = parse_expression("c(a+b)+dc'");
  auto vk = is_dsop(kernel_demo);
  CHECK_FALSE(vk.disjoint);
  CHECK(kernel_demo.term_to_string(vk.witness->first) == "ac");
  CHECK(kernel_demo.term_to_string(vk.witness->second) == "bc");

  CHECK(is_dsop(parse_expression("ab'c+bc+dc'")).disjoint);
  CHECK(is_dsop(parse_expression("ac+a'bc+dc'")).disjoint);
}

TEST_CASE("sop_to_dsop on the worked examples") {
  auto f = parse_expression("ac+bc+dc'");
  auto d = sop_to_dsop(f);
  CHECK(is_dsop(d).disjoint);
  CHECK(equivalent(f, d));
  // Splitting the later term of (ac, bc) gives ac + a'bc + dc'.
  CHECK(d.to_string() == "ac + a'bc + c'd");

  auto ab = parse_expression("a+b");
  auto dab = sop_to_dsop(ab);
  CHECK(is_dsop(dab).disjoint);
  CHECK(equivalent(ab, dab));
  CHECK(dab.to_string() == "a + a'b");

  auto already = parse_expression("ab'c+bc+dc'");
  CHECK(sop_to_dsop(already).to_string() == already.to_string());
}

TEST_CASE("sop_to_dsop property: disjoint and equivalent for random SOPs") {
  std::mt19937 rng(424242);
  for (int iter = 0; iter < 300; ++iter) {
    int vars = 2 + (iter % 4);  // 2..5 variables
    auto e = random_sop(rng, vars, 5);
    auto d = sop_to_dsop(e);
    REQUIRE(is_dsop(d).disjoint);
    for (uint32_t m = 0; m < (1u << vars); ++m) REQUIRE(oracle_eval(e, m) == oracle_eval(d, m));
  }
}

TEST_CASE("dual_rail_encode onoff matches the transformed equations") {
  auto f = exemplar_f();
  auto d = dual_rail_encode(f, DualRailMode::onoff);
  CHECK(d.true_rail.to_string() == "a0c1 + b0c1 + c0d1");
  CHECK(d.false_rail.to_string() == "a1b1c1 + c0d0");

  auto factored_true = factor_single_kernel(d.true_rail);
  CHECK(factored_true.to_string() == "(a0 + b0)c1 + c0d1");
  CHECK(d.overlap_warnings.empty());
}

TEST_CASE("dual_rail_encode drcl false rail is the De Morgan dual") {
  auto f = exemplar_f();
  auto onoff = dual_rail_encode(f, DualRailMode::onoff);
  auto drcl = dual_rail_encode(f, DualRailMode::drcl);
  CHECK(drcl.true_rail.to_string() == onoff.true_rail.to_string());
  // Logically equivalent to the OFF cover but algebraically different.
  CHECK(equivalent(drcl.false_rail, onoff.false_rail));
  CHECK(drcl.false_rail.to_string() != onoff.false_rail.to_string());
}

TEST_CASE("dual_rail_encode constant functions") {
  auto one = function_from_spec(2, {0, 1, 2, 3});
  auto d = dual_rail_encode(one, DualRailMode::onoff);
  REQUIRE(d.true_rail.term_count() == 1);
  CHECK(d.true_rail.flat_terms()[0].is_one());
  CHECK(d.false_rail.empty());
}

TEST_CASE("dual_rail codeword invariants") {
  // On every complete codeword exactly one rail is 1; on incomplete codewords
  // a high rail stays high for every completion (monotone behaviour).
  std::mt19937 rng(909);
  for (int iter = 0; iter < 60; ++iter) {
    int vars = 2 + (iter % 3);
    auto f = random_function(rng, vars);
    auto d = dual_rail_encode(f, DualRailMode::onoff);

    for (uint32_t m = 0; m < (1u << vars); ++m) {
      uint64_t rails = 0;
      for (int v = 0; v < vars; ++v) {
        int bit = (m >> (vars - 1 - v)) & 1;
        rails |= 1ull << (2 * v + bit);
      }
      bool t = d.true_rail.evaluate_rails(rails);
      bool fl = d.false_rail.evaluate_rails(rails);
      REQUIRE(t == f.is_on(m));
      REQUIRE(fl == f.is_off(m));
      REQUIRE(t != fl);
    }

    // Partial codeword: drop one variable's rails; a rail set on the partial
    // assignment must be set on both completions.
    for (uint32_t m = 0; m < (1u << vars); ++m) {
      for (int drop = 0; drop < vars; ++drop) {
        uint64_t rails = 0;
        for (int v = 0; v < vars; ++v) {
          if (v == drop) continue;
          int bit = (m >> (vars - 1 - v)) & 1;
          rails |= 1ull << (2 * v + bit);
        }
        for (const SopExpression* rail : {&d.true_rail, &d.false_rail}) {
          if (!rail->evaluate_rails(rails)) continue;
          for (int bit = 0; bit < 2; ++bit) {
            uint64_t complete = rails | (1ull << (2 * drop + bit));
            REQUIRE(rail->evaluate_rails(complete));
          }
        }
      }
    }
  }
}

TEST_CASE("equivalent compares truth tables and rejects universe mismatches") {
  auto eq1 = parse_expression("a'c+b'c+c'd");
  auto eq3 = parse_expression("(a'+b')c+c'd");
  CHECK(equivalent(eq1, eq3));

  auto a = parse_expression("ab+a'");
  auto b = parse_expression("b+a'");
  CHECK(equivalent(a, b));

  auto x = parse_expression("a");
  auto nx = parse_expression("a'");
  CHECK_FALSE(equivalent(x, nx));

  auto two = parse_expression("ab");
  CHECK_THROWS_AS((void)equivalent(x, two), std::invalid_argument);
}

TEST_CASE("sop_to_dsop equivalence property, 100 samples") {
  std::mt19937 rng(1001);
  for (int iter = 0; iter < 100; ++iter) {
    int vars = 4;
    auto e = random_sop(rng, vars, 5);
    auto d = sop_to_dsop(e);
    REQUIRE(equivalent(e, d));
    REQUIRE(is_dsop(d).disjoint);
  }
}

TEST_CASE("is_dsop is invariant under expansion") {
  std::mt19937 rng(55);
  for (int iter = 0; iter < 100; ++iter) {
    auto base = random_sop(rng, 2 + (iter % 4), 4);
    auto factored = factor_single_kernel(base);
    REQUIRE(is_dsop(factored).disjoint == is_dsop(expand_factored(factored)).disjoint);
  }
}

TEST_CASE("expression parser round trips and rejects garbage") {
  CHECK(parse_expression("a'c + b'c + c'd").to_string() == "a'c + b'c + c'd");
  CHECK(parse_expression("[a0+b0]c1+c0d1").to_string() == "(a0 + b0)c1 + c0d1");
  CHECK(parse_expression("ab+cd").to_string() == "ab + cd");
  // Double kernel products are multiplied out.
  auto z0 = parse_expression("[a0+b0][c0+d0]");
  CHECK(z0.flat_terms().size() == 4);
  CHECK_THROWS_AS(parse_expression("a+"), ParseError);
  CHECK_THROWS_AS(parse_expression("(a+b"), ParseError);
  CHECK_THROWS_AS(parse_expression(""), ParseError);
  CHECK_THROWS_AS(parse_expression("aa'"), ParseError);
}

TEST_CASE("rail display uses the walkthrough notation") {
  CHECK(rail_display("a", Polarity::pos) == "a(1)");
  CHECK(rail_display("a", Polarity::neg) == "a(0)");
}
