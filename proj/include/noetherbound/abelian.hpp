#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "noetherbound/numeric.hpp"

namespace noether {

// Finite abelian group in invariant-factor form d_1 | d_2 | ... | d_r, each
// d_i >= 2; the empty list is the trivial group. Orders are exact integers.
class FiniteAbelianGroup {
 public:
  FiniteAbelianGroup() = default;  // trivial group
  // validates d_i >= 2 and the divisibility chain
  explicit FiniteAbelianGroup(std::vector<mpz_class> invariant_factors);

  static FiniteAbelianGroup cyclic(const mpz_class& n);  // n >= 1; n = 1 is trivial
  static FiniteAbelianGroup elem_abelian(unsigned long p, unsigned k);
  // any list of cyclic orders (>= 1), normalized to invariant factors
  static FiniteAbelianGroup from_cyclic_factors(const std::vector<mpz_class>& ns);

  const std::vector<mpz_class>& invariant_factors() const { return d_; }
  size_t rank() const { return d_.size(); }
  const mpz_class& order() const { return order_; }
  mpz_class exponent() const { return d_.empty() ? mpz_class(1) : d_.back(); }
  bool trivial() const { return d_.empty(); }

  // true when the order fits the dense-index machinery
  bool small(unsigned long max_order) const;
  unsigned long order_ul() const;  // requires small()

  bool operator==(const FiniteAbelianGroup& g) const { return d_ == g.d_; }
  std::string to_string() const;  // e.g. "Z2 x Z4"

 private:
  std::vector<mpz_class> d_;
  mpz_class order_ = 1;
};

// Element as a coordinate vector, coords[i] in [0, d_i)
struct GroupElement {
  std::vector<mpz_class> coords;

  bool operator==(const GroupElement& o) const { return coords == o.coords; }
  bool operator<(const GroupElement& o) const { return coords < o.coords; }
  std::string to_string() const;
};

GroupElement add(const FiniteAbelianGroup& G, const GroupElement& a, const GroupElement& b);
GroupElement zero_element(const FiniteAbelianGroup& G);
bool is_zero(const GroupElement& g);
// least t >= 1 with t*g = 0: lcm of d_i / gcd(coords[i], d_i)
mpz_class element_order(const FiniteAbelianGroup& G, const GroupElement& g);
void validate_element(const FiniteAbelianGroup& G, const GroupElement& g);

// dense index <-> coordinates (mixed radix, last coordinate fastest); only
// for groups passing small()
unsigned long element_index(const FiniteAbelianGroup& G, const GroupElement& g);
GroupElement element_at(const FiniteAbelianGroup& G, unsigned long index);

// Finite multiset of group elements over one group, stored as sorted
// (element, multiplicity) pairs so that huge canonical sequences stay compact.
class ZSequence {
 public:
  explicit ZSequence(FiniteAbelianGroup G) : group_(std::move(G)) {}
  ZSequence(FiniteAbelianGroup G, const std::vector<GroupElement>& elems);

  const FiniteAbelianGroup& group() const { return group_; }
  const std::vector<std::pair<GroupElement, mpz_class>>& entries() const { return entries_; }

  void push(const GroupElement& g, const mpz_class& count = 1);
  mpz_class length() const;
  mpz_class max_multiplicity() const;
  bool empty() const { return entries_.empty(); }
  // expands multiplicities; requires the length to fit in memory
  std::vector<GroupElement> to_elements() const;

  bool operator==(const ZSequence& o) const;
  std::string to_string() const;

 private:
  FiniteAbelianGroup group_;
  std::vector<std::pair<GroupElement, mpz_class>> entries_;  // sorted by element
};

}  // namespace noether
