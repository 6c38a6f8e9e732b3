#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "noetherbound/zerosum.hpp"

namespace noether {

// Sparse monomial over 1-indexed variables.
struct Monomial {
  std::map<size_t, unsigned long> exps;  // variable index -> exponent >= 1

  void set(size_t var, unsigned long e);
  unsigned long exponent(size_t var) const;
  unsigned long degree() const;
  unsigned long max_exponent() const;
  size_t support_size() const { return exps.size(); }
  bool divides(const Monomial& f) const;

  bool operator==(const Monomial& o) const { return exps == o.exps; }
  std::string to_string(char letter = 'y') const;  // e.g. "y1^2 y3"
};

// "y1^2 y3" or "y1^2*y3"; the variable letter must match throughout
Monomial parse_monomial(const std::string& text, char letter = 'y');

// f = g_1 g_2 ... g_h with squarefree rows g_{i+1} | g_i and h = max
// exponent; row k collects the variables of exponent >= k.
struct RowDecomposition {
  std::vector<Monomial> rows;
};

RowDecomposition row_decomposition(const Monomial& f);  // degree >= 1

// Variables y_1..y_p carrying all p distinct weights mod p, weight(y_1) = 0,
// with {y_2..y_p} partitioned into orbits of a common size n dividing p-1.
class VariableSet {
 public:
  // default layout: weight(y_i) = i-1, orbits = consecutive blocks
  VariableSet(unsigned long p, unsigned long n);
  // explicit layout; weights is 1-indexed via weights[i-1], orbits list
  // variable indices; validated
  VariableSet(unsigned long p, unsigned long n, std::vector<unsigned long> weights,
              std::vector<std::vector<size_t>> orbits);

  unsigned long p() const { return p_; }
  unsigned long n() const { return n_; }
  unsigned long weight(size_t var) const;       // var in 1..p
  size_t var_with_weight(unsigned long w) const;  // inverse of weight()
  const std::vector<std::vector<size_t>>& orbits() const { return orbits_; }

 private:
  unsigned long p_, n_;
  std::vector<unsigned long> weights_;
  std::vector<size_t> var_of_weight_;
  std::vector<std::vector<size_t>> orbits_;  // nontrivial orbits, y_1 excluded
};

// Variables x_1..x_l acted on diagonally: x_i carries the character
// weights[i-1]. transfer, when present, names the weight-matched y-variable
// of each x_i explicitly; otherwise the (unique) match is looked up.
struct WeightedModule {
  FiniteAbelianGroup group;
  std::vector<GroupElement> weights;
  std::optional<std::vector<size_t>> transfer;

  WeightedModule(FiniteAbelianGroup g, std::vector<GroupElement> w,
                 std::optional<std::vector<size_t>> t = std::nullopt);
};

// image of m under x_i -> y with the same weight; exponents of x-variables
// sharing a weight accumulate. Requires the module group to be Z_p for the
// p of vs.
Monomial weight_transfer(const Monomial& m, const WeightedModule& wm, const VariableSet& vs);

// rows g_1..g_h of f never stall while an orbit is partially involved: if
// some orbit meets g_i (i < h) without being contained in it, then
// deg(g_{i+1}) < deg(g_i)
bool is_gapless_image(const Monomial& f_y, const VariableSet& vs);
bool is_gapless(const Monomial& m, const WeightedModule& wm, const VariableSet& vs);

// rows of a gapless image shrink below degree n while y_1 is absent: if
// y_1 does not divide g_i and deg(g_i) < n then deg(g_{i+1}) < deg(g_i).
// Holds for every gapless monomial; exposed as a testable oracle.
bool check_below_n(const Monomial& f_y, const VariableSet& vs);

// weight-0 submonomial f' | f with 1 <= deg(f') <= h; requires
// deg(f) >= p and all exponents <= h, and is then guaranteed to succeed
Monomial invariant_submonomial(const Monomial& f, unsigned long h, const VariableSet& vs);

struct AtomsResult {
  // exponent vectors a (length l) with sum(a_i * weights[i]) = 0 and no
  // proper nonzero zero-sum subvector, sorted by (degree, lex)
  std::vector<std::vector<unsigned long>> atoms;
  mpz_class beta;          // max atom degree, 0 when no atoms
  mpz_class degree_cap;    // enumeration cap actually used
  bool truncated = false;  // caller lowered the cap below the proven bound
};

// All atoms of the invariant-monomial monoid of the diagonal action, up to
// degree D(group) (every invariant monomial of larger degree factors), or up
// to the caller's cap when given.
AtomsResult atoms_and_beta(const WeightedModule& wm, const SearchBudget& budget = {},
                           std::optional<unsigned long> degree_cap = std::nullopt);

}  // namespace noether
