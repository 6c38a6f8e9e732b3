#pragma once

#include <optional>
#include <string>
#include <vector>

#include "noetherbound/descriptor.hpp"

namespace noether {

// Exact order of a simple group of Lie type, from the embedded order table.
// Throws std::invalid_argument for unknown families; callers are expected to
// have validated (family, m, q) through the descriptor layer.
mpz_class lie_order(const std::string& family, unsigned long m, const mpz_class& q);

struct SporadicDatum {
  std::string name;
  mpz_class order;
  std::optional<Fact> fact;  // a known section or subgroup, when the table has one
  std::string note;          // free-text annotation, empty when none
};

const std::vector<SporadicDatum>& sporadic_table();
const SporadicDatum& sporadic_datum(const std::string& name);  // throws for unknown names

// Smallest tabulated exponent e such that an elementary abelian subgroup of
// order q^e sits inside the family member of rank m. Variants whose
// availability depends on the isogeny type are excluded.
unsigned long lie_safe_exponent(const std::string& family, unsigned long m);

// Exponent b with |S| <= q^b, from the same table.
unsigned long lie_bound_exponent(const std::string& family, unsigned long m);

// Recomputation of the tabulated quality figures log_{q^b} n(E),
// n(E) = p^N / (N(p-1) + 1) for E elementary abelian of order p^N.
struct Table1Entry {
  std::string family;
  unsigned long m = 0;
  mpz_class q;
  std::string printed;   // the decimal figure as tabulated
  bool matched = false;
  std::string matched_via;              // e.g. "e=4 (N=4), rounded"
  std::vector<std::string> computed;    // one rendering per candidate variant
};

struct Table1Report {
  std::vector<Table1Entry> entries;
  size_t matched = 0;
  size_t total = 0;
  std::vector<std::string> anomalies;  // "family@m,q" keys of the mismatches
};

// Checks every tabulated figure against an exact recomputation, accepting a
// candidate when its truncation or its rounding to the printed number of
// digits reproduces the printed string.
Table1Report table1_check(unsigned precision_bits = 192);

}  // namespace noether
