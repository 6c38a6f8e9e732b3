#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace noether {

// Raised when a computation would exceed its configured budget; carries the
// best lower bound established before giving up (0 when none).
struct BudgetError : std::runtime_error {
  mpz_class partial_lower_bound;
  explicit BudgetError(const std::string& msg, mpz_class partial = 0)
      : std::runtime_error(msg), partial_lower_bound(std::move(partial)) {}
};

inline mpz_class pow_z(const mpz_class& base, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

// base^e for integer e of either sign; e < 0 requires base != 0
inline mpq_class pow_q(const mpq_class& base, long e) {
  if (e >= 0) {
    mpq_class r;
    mpz_pow_ui(mpq_numref(r.get_mpq_t()), mpq_numref(base.get_mpq_t()),
               static_cast<unsigned long>(e));
    mpz_pow_ui(mpq_denref(r.get_mpq_t()), mpq_denref(base.get_mpq_t()),
               static_cast<unsigned long>(e));
    r.canonicalize();
    return r;
  }
  if (base == 0) throw std::domain_error("0 raised to a negative power");
  return pow_q(1 / base, -e);
}

inline bool is_prime(const mpz_class& n) {
  return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

inline bool is_prime_ul(unsigned long n) { return is_prime(mpz_class(n)); }

// Trial-division factorization, sufficient for the structural parameters the
// engine sees (invariant factors, Frobenius complements). Refuses inputs
// whose smallest factor may exceed the trial cap.
inline std::vector<std::pair<unsigned long, unsigned>> factorize(unsigned long n) {
  if (n == 0) throw std::domain_error("factorize(0)");
  std::vector<std::pair<unsigned long, unsigned>> out;
  static constexpr unsigned long kCap = 10'000'000;
  for (unsigned long p = 2; p * p <= n && p <= kCap; p += (p == 2 ? 1 : 2)) {
    if (n % p) continue;
    unsigned e = 0;
    while (n % p == 0) n /= p, ++e;
    out.emplace_back(p, e);
  }
  if (n > 1) {
    if (!is_prime_ul(n) && n > kCap * kCap)
      throw std::domain_error("factorize: cofactor too large to certify prime");
    out.emplace_back(n, 1);
  }
  return out;
}

inline mpz_class lcm_z(const mpz_class& a, const mpz_class& b) {
  mpz_class r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline mpz_class gcd_z(const mpz_class& a, const mpz_class& b) {
  mpz_class r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline mpz_class factorial_z(unsigned long n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

inline mpz_class binomial_z(const mpz_class& n, unsigned long k) {
  mpz_class r;
  mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), k);
  return r;
}

}  // namespace noether
