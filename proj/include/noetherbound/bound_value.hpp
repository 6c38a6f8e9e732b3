#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace noether {

// Raised when two values cannot be separated at the precision cap, or when an
// operation is not defined for the forms involved.
struct ComparisonError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PowerFactor {
  mpz_class base;  // >= 2
  mpq_class exp;   // nonzero, non-integral after canonicalization
};

// A certified numeric value in one of three forms:
//   Exact        an arbitrary-precision rational
//   PowerProduct coeff * prod(base_i ^ exp_i) with rational exponents
//   Enclosure    an interval [lo, hi] of dyadic rationals known to contain
//                the value, lower endpoints rounded down, upper rounded up
// Exact and PowerProduct values compare exactly (integerization); enclosures
// compare by interval refinement and admit explicit failure.
class BoundValue {
 public:
  enum class Form { Exact, PowerProduct, Enclosure };

  BoundValue() : form_(Form::Exact), exact_(0) {}

  static BoundValue exact(mpq_class v);
  static BoundValue exact_int(mpz_class v);
  // coeff * prod factors; canonicalizes (merges bases, folds integral
  // exponents into the coefficient, collapses to Exact when possible)
  static BoundValue power_product(mpq_class coeff, std::vector<PowerFactor> factors);
  // base^e, base >= 1
  static BoundValue power(const mpz_class& base, const mpq_class& e);
  static BoundValue enclosure(mpq_class lo, mpq_class hi);

  Form form() const { return form_; }
  const char* form_name() const;
  bool is_exact() const { return form_ == Form::Exact; }

  const mpq_class& exact_value() const;                // Exact only
  const mpq_class& coeff() const { return exact_; }    // PowerProduct only
  const std::vector<PowerFactor>& factors() const { return factors_; }
  const mpq_class& lo() const;                         // Enclosure only
  const mpq_class& hi() const;                         // Enclosure only

  // exact arithmetic; defined for Exact/PowerProduct operands
  BoundValue mul(const BoundValue& o) const;
  BoundValue div(const BoundValue& o) const;
  // exact on endpoints; Enclosure operands allowed
  BoundValue add(const BoundValue& o) const;
  BoundValue scale(const mpq_class& c) const;  // c > 0

  // sound outward-rounded interval at >= bits of precision (Exact gives a
  // point; Enclosure returns its stored endpoints regardless of bits)
  std::pair<mpq_class, mpq_class> interval(unsigned bits) const;

  // three-way comparison: -1, 0, +1; exact when both operands are
  // Exact/PowerProduct, else interval refinement doubling 128..cap bits;
  // throws ComparisonError if still undecided
  static int cmp(const BoundValue& a, const BoundValue& b, unsigned cap_bits = 1024);

  std::string expr() const;  // human-readable expression

  // decimal endpoints, rounded down/up respectively
  std::string decimal_lo(int digits = 15) const;
  std::string decimal_hi(int digits = 15) const;

  bool operator==(const BoundValue& o) const;

 private:
  Form form_;
  mpq_class exact_;                   // Exact value, or PowerProduct coeff
  std::vector<PowerFactor> factors_;  // PowerProduct only
  mpq_class lo_, hi_;                 // Enclosure only

  int sign() const;  // of the represented value (PP coeff sign; Enclosure: of lo when decisive)
};

// [lo, hi] enclosing log2(x); requires x > 0 (checked via x's interval)
BoundValue log2_enclosure(const BoundValue& x, unsigned bits = 192);

// [lo, hi] enclosing base^e; requires base >= 1 and e >= 0
BoundValue pow_enclosure(const BoundValue& base, const BoundValue& e, unsigned bits = 192);

}  // namespace noether
