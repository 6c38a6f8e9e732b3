#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "noetherbound/abelian.hpp"

namespace noether {

enum class Kind {
  Trivial,
  Cyclic,
  Abelian,
  ElemAbelian,
  Dihedral,
  Frobenius,
  Ext,
  Product,
  Lie,
  Alt,
  Sporadic,
  Tits,
  Opaque,
};

class Descriptor;
using DescPtr = std::shared_ptr<const Descriptor>;

struct Fact {
  enum class Type { Subgroup, Section, Normal };
  Type type;
  DescPtr sub;       // the subgroup / section / normal subgroup
  DescPtr quotient;  // Normal only
  mpz_class index;   // Subgroup only
};

// attributes attachable to opaque nodes; absent means unknown
struct OpaqueAttrs {
  std::optional<mpz_class> order;  // required by the parser
  std::optional<bool> solvable;
  std::optional<bool> nilpotent;
  std::optional<mpz_class> max_elem_order;
  std::optional<mpz_class> char_cyclic;      // order of a characteristic cyclic subgroup
  std::optional<unsigned long> alt_degree;   // largest alternating factor degree; 0 = none
  std::vector<Fact> facts;
};

struct DescriptorError : std::runtime_error {
  size_t position;
  DescriptorError(const std::string& msg, size_t pos)
      : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
};

// Structural group description. Parameter slots by kind:
//   Cyclic n; Abelian ds (invariant factors); ElemAbelian p, k;
//   Dihedral n (the group order, even, >= 6); Frobenius p, m (m | p-1);
//   Ext normal_part, quotient_part; Product children; Lie family, m, q;
//   Alt k; Sporadic name; Opaque attrs.
class Descriptor {
 public:
  Kind kind = Kind::Trivial;
  mpz_class n;
  std::vector<mpz_class> ds;
  unsigned long p = 0, k = 0, m = 0;
  mpz_class q;
  std::string family;
  std::string name;
  DescPtr normal_part, quotient_part;
  std::vector<DescPtr> children;
  OpaqueAttrs attrs;

  std::string to_string() const;  // canonical form; reparses to an equal node
  mpz_class order() const;        // always defined (opaque carries its order)

  // the underlying abelian group when the node provably is one
  std::optional<FiniteAbelianGroup> as_abelian() const;

  std::optional<bool> solvable() const;
  std::optional<bool> nilpotent() const;
  std::optional<mpz_class> max_elem_order() const;
  // default |C| for the characteristic-cyclic rules: explicit attribute,
  // else the largest invariant factor of an abelian node, else the maximal
  // element order when known (every cyclic subgroup fits inside it)
  std::optional<mpz_class> char_cyclic() const;
  // largest alternating composition-factor degree; 0 = provably none that
  // matters (consumers floor this at 2^10, which absorbs the exceptional
  // small isomorphisms such as alt(5) = lie(A,1,4)); nullopt = unknown
  std::optional<unsigned long> alt_degree() const;
  // true only when non-cyclicity follows from the descriptor itself
  bool noncyclic() const;

  bool operator==(const Descriptor& o) const { return to_string() == o.to_string(); }
};

DescPtr parse_descriptor(const std::string& text);

// construction helpers (validated like the parser)
DescPtr make_trivial();
DescPtr make_cyclic(const mpz_class& n);
DescPtr make_abelian(std::vector<mpz_class> ds);
DescPtr make_elem_abelian(unsigned long p, unsigned long k);
DescPtr make_dihedral(const mpz_class& order);
DescPtr make_frobenius(unsigned long p, unsigned long m);
DescPtr make_ext(DescPtr normal_part, DescPtr quotient_part);
DescPtr make_product(std::vector<DescPtr> children);
DescPtr make_lie(const std::string& family, unsigned long m, const mpz_class& q);
DescPtr make_alt(unsigned long k);
DescPtr make_sporadic(const std::string& name);
DescPtr make_tits();
DescPtr make_opaque(OpaqueAttrs attrs);

// q = p^f with p prime, f >= 1
struct PrimePower {
  mpz_class p;
  unsigned long f;
};
PrimePower split_prime_power(const mpz_class& q);  // throws if not a prime power

}  // namespace noether
