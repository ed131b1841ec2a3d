#include <algorithm>
#include <bit>
#include <set>

#include "adw/boolean.hpp"

// Two-level minimization: Quine-McCluskey prime generation over the chosen
// set plus don't-cares, then an exact minimum cover of the chosen care
// minterms by branch and bound.  Deterministic throughout: implicants and
// branching choices are visited in canonical (value, mask) order.

namespace adw {

namespace {

// An implicant in minterm-bit space: covers m iff (m & ~free_mask) == value.
struct Implicant {
  uint32_t value;
  uint32_t free_mask;

  bool covers(uint32_t m) const { return (m & ~free_mask) == value; }
  friend bool operator<(const Implicant& a, const Implicant& b) {
    return std::tie(a.free_mask, a.value) < std::tie(b.free_mask, b.value);
  }
  friend bool operator==(const Implicant& a, const Implicant& b) {
    return a.value == b.value && a.free_mask == b.free_mask;
  }
};

std::vector<Implicant> prime_implicants(const std::vector<uint32_t>& care_minterms) {
  std::vector<Implicant> current;
  current.reserve(care_minterms.size());
  for (uint32_t m : care_minterms) current.push_back({m, 0});
  std::sort(current.begin(), current.end());
  current.erase(std::unique(current.begin(), current.end()), current.end());

  std::vector<Implicant> primes;
  while (!current.empty()) {
    std::vector<bool> merged(current.size(), false);
    std::set<Implicant> next;
    for (size_t i = 0; i < current.size(); ++i) {
      for (size_t j = i + 1; j < current.size(); ++j) {
        if (current[i].free_mask != current[j].free_mask) continue;
        uint32_t diff = current[i].value ^ current[j].value;
        if (std::popcount(diff) != 1) continue;
        next.insert({current[i].value & ~diff, current[i].free_mask | diff});
        merged[i] = merged[j] = true;
      }
    }
    for (size_t i = 0; i < current.size(); ++i)
      if (!merged[i]) primes.push_back(current[i]);
    current.assign(next.begin(), next.end());
  }
  std::sort(primes.begin(), primes.end());
  return primes;
}

ProductTerm implicant_to_term(const Implicant& imp, int var_count) {
  ProductTerm t;
  for (int v = 0; v < var_count; ++v) {
    uint32_t bit = 1u << (var_count - 1 - v);
    if (imp.free_mask & bit) continue;
    t = t.with(v, (imp.value & bit) ? Polarity::pos : Polarity::neg);
  }
  return t;
}

int implicant_literals(const Implicant& imp, int var_count) {
  return var_count - std::popcount(imp.free_mask);
}

struct CoverSearch {
  const std::vector<Implicant>& primes;
  const std::vector<std::vector<int>>& cover_of;  // minterm slot -> prime ids
  int var_count;
  std::vector<int> best;
  int best_terms = INT32_MAX;
  int best_literals = INT32_MAX;

  void run(std::vector<int>& chosen, std::vector<bool>& covered, int uncovered, int literals) {
    if ((int)chosen.size() > best_terms) return;
    if (uncovered == 0) {
      int terms = (int)chosen.size();
      if (terms < best_terms || (terms == best_terms && literals < best_literals)) {
        best = chosen;
        best_terms = terms;
        best_literals = literals;
      }
      return;
    }
    if ((int)chosen.size() == best_terms) return;
    // Branch on the uncovered minterm slot with the fewest candidate primes.
    int pick = -1;
    size_t pick_options = SIZE_MAX;
    for (size_t s = 0; s < covered.size(); ++s) {
      if (covered[s]) continue;
      if (cover_of[s].size() < pick_options) {
        pick_options = cover_of[s].size();
        pick = (int)s;
      }
    }
    for (int prime_id : cover_of[pick]) {
      std::vector<int> newly;
      for (size_t s = 0; s < covered.size(); ++s) {
        if (!covered[s] && std::binary_search(cover_of[s].begin(), cover_of[s].end(), prime_id)) {
          covered[s] = true;
          newly.push_back((int)s);
        }
      }
      chosen.push_back(prime_id);
      run(chosen, covered, uncovered - (int)newly.size(),
          literals + implicant_literals(primes[prime_id], var_count));
      chosen.pop_back();
      for (int s : newly) covered[s] = false;
    }
  }
};

}  // namespace

SopExpression minimize_cover(const BooleanFunction& f, CoverPolarity polarity) {
  if (f.var_count() > 14)
    throw std::invalid_argument("exact minimization is limited to 14 variables");

  std::vector<uint32_t> chosen, care;
  for (uint32_t m = 0; m < f.space_size(); ++m) {
    bool in_set = (polarity == CoverPolarity::on) ? f.is_on(m) : f.is_off(m);
    if (in_set) chosen.push_back(m);
    if (in_set || f.is_dc(m)) care.push_back(m);
  }

  SopExpression cover(f.var_count(), f.var_names());
  if (chosen.empty()) return cover;  // constant-0 side: empty cover

  const auto primes = prime_implicants(care);

  // Table: which primes cover each chosen minterm.
  std::vector<std::vector<int>> cover_of(chosen.size());
  for (size_t s = 0; s < chosen.size(); ++s)
    for (size_t p = 0; p < primes.size(); ++p)
      if (primes[p].covers(chosen[s])) cover_of[s].push_back((int)p);

  std::vector<bool> covered(chosen.size(), false);
  std::vector<int> chosen_primes;
  int literals = 0;

  // Essential primes first: any minterm with a single candidate.
  bool progress = true;
  int uncovered = (int)chosen.size();
  while (progress) {
    progress = false;
    for (size_t s = 0; s < chosen.size(); ++s) {
      if (covered[s] || cover_of[s].size() != 1) continue;
      int p = cover_of[s][0];
      chosen_primes.push_back(p);
      literals += implicant_literals(primes[p], f.var_count());
      for (size_t t = 0; t < chosen.size(); ++t) {
        if (!covered[t] && primes[p].covers(chosen[t])) {
          covered[t] = true;
          --uncovered;
        }
      }
      progress = true;
    }
  }

  if (uncovered > 0) {
    CoverSearch search{primes, cover_of, f.var_count(), {}, INT32_MAX, INT32_MAX};
    search.run(chosen_primes, covered, uncovered, literals);
    chosen_primes = search.best;
  }

  std::vector<ProductTerm> terms;
  terms.reserve(chosen_primes.size());
  for (int p : chosen_primes) terms.push_back(implicant_to_term(primes[p], f.var_count()));
  std::sort(terms.begin(), terms.end());
  for (const auto& t : terms) cover.add_term(t);
  return cover;
}

}  // namespace adw
