#include "noetherbound/bound_value.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cassert>
#include <map>
#include <sstream>

#include "noetherbound/numeric.hpp"

namespace noether {

namespace {

// RAII mpfr value
struct Mpfr {
  mpfr_t x;
  explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(x, prec); }
  ~Mpfr() { mpfr_clear(x); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
};

mpq_class mpfr_to_q(const mpfr_t x) {
  mpq_class q;
  mpfr_get_q(q.get_mpq_t(), x);
  return q;
}

// directed bound for base^(u/v), base >= 2, v >= 1, u != 0
void factor_bound(mpfr_t out, const mpz_class& base, const mpq_class& e, bool lower) {
  const mpz_class& u = e.get_num();
  unsigned long v = e.get_den().get_ui();
  mpfr_rnd_t dir = lower ? MPFR_RNDD : MPFR_RNDU;
  bool neg = u < 0;
  mpz_class absu = abs(u);
  if (!absu.fits_ulong_p()) throw ComparisonError("power-product exponent too large");
  mpz_class t = pow_z(base, absu.get_ui());
  // base^(|u|/v), rounded away from the final direction if we will invert
  mpfr_rnd_t inner = (lower != neg) ? MPFR_RNDD : MPFR_RNDU;
  mpfr_set_z(out, t.get_mpz_t(), inner);
  if (v > 1) mpfr_rootn_ui(out, out, v, inner);
  if (neg) {
    // out is an upper (resp. lower) bound of base^(|u|/v) > 0; invert
    mpfr_ui_div(out, 1, out, dir);
  }
}

}  // namespace

BoundValue BoundValue::exact(mpq_class v) {
  BoundValue b;
  b.form_ = Form::Exact;
  b.exact_ = std::move(v);
  b.exact_.canonicalize();
  return b;
}

BoundValue BoundValue::exact_int(mpz_class v) { return exact(mpq_class(std::move(v))); }

BoundValue BoundValue::power_product(mpq_class coeff, std::vector<PowerFactor> factors) {
  coeff.canonicalize();
  // merge equal bases
  std::map<mpz_class, mpq_class> merged;
  for (auto& f : factors) {
    if (f.base <= 0) throw std::domain_error("power-product base must be positive");
    if (f.base == 1) continue;
    mpq_class e = f.exp;
    e.canonicalize();
    merged[f.base] += e;
  }
  // fold integral exponents into the coefficient
  std::vector<PowerFactor> kept;
  for (auto& [base, e] : merged) {
    e.canonicalize();
    if (e == 0) continue;
    if (e.get_den() == 1) {
      const mpz_class& k = e.get_num();
      mpz_class ka = abs(k);
      if (!ka.fits_ulong_p()) throw std::domain_error("integral exponent too large");
      mpq_class f(pow_z(base, ka.get_ui()));
      coeff *= (k > 0) ? f : mpq_class(1) / f;
    } else {
      kept.push_back({base, e});
    }
  }
  coeff.canonicalize();
  if (kept.empty() || coeff == 0) return exact(coeff);
  BoundValue b;
  b.form_ = Form::PowerProduct;
  b.exact_ = std::move(coeff);
  b.factors_ = std::move(kept);
  return b;
}

BoundValue BoundValue::power(const mpz_class& base, const mpq_class& e) {
  if (base < 1) throw std::domain_error("power: base must be >= 1");
  return power_product(1, {{base, e}});
}

BoundValue BoundValue::enclosure(mpq_class lo, mpq_class hi) {
  lo.canonicalize();
  hi.canonicalize();
  if (lo > hi) throw std::domain_error("enclosure: lo > hi");
  BoundValue b;
  b.form_ = Form::Enclosure;
  b.lo_ = std::move(lo);
  b.hi_ = std::move(hi);
  return b;
}

const char* BoundValue::form_name() const {
  switch (form_) {
    case Form::Exact: return "exact";
    case Form::PowerProduct: return "power_product";
    case Form::Enclosure: return "enclosure";
  }
  return "?";
}

const mpq_class& BoundValue::exact_value() const {
  if (form_ != Form::Exact) throw std::logic_error("exact_value() on non-exact form");
  return exact_;
}

const mpq_class& BoundValue::lo() const {
  if (form_ != Form::Enclosure) throw std::logic_error("lo() on non-enclosure form");
  return lo_;
}

const mpq_class& BoundValue::hi() const {
  if (form_ != Form::Enclosure) throw std::logic_error("hi() on non-enclosure form");
  return hi_;
}

int BoundValue::sign() const {
  switch (form_) {
    case Form::Exact:
    case Form::PowerProduct: return sgn(exact_);
    case Form::Enclosure:
      if (lo_ > 0) return 1;
      if (hi_ < 0) return -1;
      if (lo_ == 0 && hi_ == 0) return 0;
      throw ComparisonError("sign of straddling enclosure");
  }
  return 0;
}

BoundValue BoundValue::mul(const BoundValue& o) const {
  if (form_ == Form::Enclosure || o.form_ == Form::Enclosure)
    throw ComparisonError("mul: enclosure operands not supported");
  std::vector<PowerFactor> fs = factors_;
  fs.insert(fs.end(), o.factors_.begin(), o.factors_.end());
  return power_product(exact_ * o.exact_, std::move(fs));
}

BoundValue BoundValue::div(const BoundValue& o) const {
  if (form_ == Form::Enclosure || o.form_ == Form::Enclosure)
    throw ComparisonError("div: enclosure operands not supported");
  if (o.sign() == 0) throw std::domain_error("division by zero bound");
  std::vector<PowerFactor> fs = factors_;
  for (const auto& f : o.factors_) fs.push_back({f.base, -f.exp});
  return power_product(exact_ / o.exact_, std::move(fs));
}

BoundValue BoundValue::add(const BoundValue& o) const {
  if (form_ == Form::Exact && o.form_ == Form::Exact) return exact(exact_ + o.exact_);
  if (form_ == Form::PowerProduct || o.form_ == Form::PowerProduct)
    throw ComparisonError("add: power-product operands not supported");
  const mpq_class alo = form_ == Form::Exact ? exact_ : lo_;
  const mpq_class ahi = form_ == Form::Exact ? exact_ : hi_;
  const mpq_class blo = o.form_ == Form::Exact ? o.exact_ : o.lo_;
  const mpq_class bhi = o.form_ == Form::Exact ? o.exact_ : o.hi_;
  return enclosure(alo + blo, ahi + bhi);
}

BoundValue BoundValue::scale(const mpq_class& c) const {
  if (c <= 0) throw std::domain_error("scale: factor must be positive");
  switch (form_) {
    case Form::Exact: return exact(exact_ * c);
    case Form::PowerProduct: return power_product(exact_ * c, factors_);
    case Form::Enclosure: return enclosure(lo_ * c, hi_ * c);
  }
  throw std::logic_error("unreachable");
}

std::pair<mpq_class, mpq_class> BoundValue::interval(unsigned bits) const {
  switch (form_) {
    case Form::Exact: return {exact_, exact_};
    case Form::Enclosure: return {lo_, hi_};
    case Form::PowerProduct: break;
  }
  if (exact_ <= 0) throw std::logic_error("power-product with non-positive coefficient");
  mpfr_prec_t prec = bits + 64;
  Mpfr lo(prec), hi(prec), t(prec);
  mpfr_set_q(lo.x, exact_.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi.x, exact_.get_mpq_t(), MPFR_RNDU);
  for (const auto& f : factors_) {
    factor_bound(t.x, f.base, f.exp, /*lower=*/true);
    mpfr_mul(lo.x, lo.x, t.x, MPFR_RNDD);
    factor_bound(t.x, f.base, f.exp, /*lower=*/false);
    mpfr_mul(hi.x, hi.x, t.x, MPFR_RNDU);
  }
  return {mpfr_to_q(lo.x), mpfr_to_q(hi.x)};
}

int BoundValue::cmp(const BoundValue& a, const BoundValue& b, unsigned cap_bits) {
  if (a.form_ != Form::Enclosure && b.form_ != Form::Enclosure) {
    // exact comparison via integerization: with all quantities positive,
    // A <= B iff A^L <= B^L for L the lcm of the exponent denominators
    int sa = a.sign(), sb = b.sign();
    if (sa != sb) return sa < sb ? -1 : 1;
    if (sa == 0) return 0;
    if (a.form_ == Form::Exact && b.form_ == Form::Exact)
      return ::cmp(a.exact_, b.exact_) < 0 ? -1 : (a.exact_ == b.exact_ ? 0 : 1);
    mpz_class L = 1;
    for (const auto& f : a.factors_) L = lcm_z(L, f.exp.get_den());
    for (const auto& f : b.factors_) L = lcm_z(L, f.exp.get_den());
    if (!L.fits_slong_p()) throw ComparisonError("cmp: exponent lcm too large");
    long l = L.get_si();
    auto raised = [l](const BoundValue& v) {
      mpq_class r = pow_q(abs(v.exact_), l);
      for (const auto& f : v.factors_) {
        mpq_class el = f.exp * l;
        el.canonicalize();
        assert(el.get_den() == 1);
        mpz_class ea = abs(el.get_num());
        if (!ea.fits_slong_p())
          throw ComparisonError("cmp: integerized exponent too large");
        r *= pow_q(mpq_class(f.base), el.get_num().get_si());
      }
      return r;
    };
    mpq_class ra = raised(a), rb = raised(b);
    int c = ra < rb ? -1 : (ra == rb ? 0 : 1);
    return sa > 0 ? c : -c;
  }
  for (unsigned bits = 128; bits <= cap_bits; bits *= 2) {
    auto [alo, ahi] = a.interval(bits);
    auto [blo, bhi] = b.interval(bits);
    if (ahi < blo) return -1;
    if (alo > bhi) return 1;
    if (alo == blo && ahi == bhi && alo == ahi) return 0;
  }
  throw ComparisonError("cmp: enclosures overlap at precision cap");
}

std::string BoundValue::expr() const {
  std::ostringstream os;
  switch (form_) {
    case Form::Exact:
      os << exact_;
      return os.str();
    case Form::Enclosure:
      os << "[" << decimal_lo() << ", " << decimal_hi() << "]";
      return os.str();
    case Form::PowerProduct: break;
  }
  bool first = true;
  if (exact_ != 1) {
    os << exact_;
    first = false;
  }
  for (const auto& f : factors_) {
    if (!first) os << " * ";
    first = false;
    os << f.base << "^(" << f.exp << ")";
  }
  return os.str();
}

namespace {
std::string decimal_of_q(const mpq_class& q, int digits, mpfr_rnd_t dir) {
  Mpfr x(256);
  mpfr_set_q(x.x, q.get_mpq_t(), dir);
  char buf[128];
  mpfr_snprintf(buf, sizeof buf, "%.*R*g", digits, dir, x.x);
  return buf;
}
}  // namespace

std::string BoundValue::decimal_lo(int digits) const {
  auto [lo, hi] = interval(192);
  (void)hi;
  return decimal_of_q(lo, digits, MPFR_RNDD);
}

std::string BoundValue::decimal_hi(int digits) const {
  auto [lo, hi] = interval(192);
  (void)lo;
  return decimal_of_q(hi, digits, MPFR_RNDU);
}

bool BoundValue::operator==(const BoundValue& o) const {
  if (form_ != o.form_) return false;
  switch (form_) {
    case Form::Exact: return exact_ == o.exact_;
    case Form::Enclosure: return lo_ == o.lo_ && hi_ == o.hi_;
    case Form::PowerProduct:
      if (exact_ != o.exact_ || factors_.size() != o.factors_.size()) return false;
      for (size_t i = 0; i < factors_.size(); ++i)
        if (factors_[i].base != o.factors_[i].base || factors_[i].exp != o.factors_[i].exp)
          return false;
      return true;
  }
  return false;
}

BoundValue log2_enclosure(const BoundValue& x, unsigned bits) {
  auto [xlo, xhi] = x.interval(bits);
  if (xlo <= 0) throw std::domain_error("log2_enclosure: argument not known positive");
  mpfr_prec_t prec = bits + 64;
  Mpfr lo(prec), hi(prec);
  mpfr_set_q(lo.x, xlo.get_mpq_t(), MPFR_RNDD);
  mpfr_log2(lo.x, lo.x, MPFR_RNDD);
  mpfr_set_q(hi.x, xhi.get_mpq_t(), MPFR_RNDU);
  mpfr_log2(hi.x, hi.x, MPFR_RNDU);
  return BoundValue::enclosure(mpfr_to_q(lo.x), mpfr_to_q(hi.x));
}

BoundValue pow_enclosure(const BoundValue& base, const BoundValue& e, unsigned bits) {
  auto [blo, bhi] = base.interval(bits);
  auto [elo, ehi] = e.interval(bits);
  if (blo < 1) throw std::domain_error("pow_enclosure: base not known >= 1");
  if (elo < 0) throw std::domain_error("pow_enclosure: exponent not known >= 0");
  // x^y is monotone increasing in both arguments for x >= 1, y >= 0
  mpfr_prec_t prec = bits + 64;
  Mpfr lo(prec), hi(prec), t(prec);
  mpfr_set_q(lo.x, blo.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(t.x, elo.get_mpq_t(), MPFR_RNDD);
  mpfr_pow(lo.x, lo.x, t.x, MPFR_RNDD);
  mpfr_set_q(hi.x, bhi.get_mpq_t(), MPFR_RNDU);
  mpfr_set_q(t.x, ehi.get_mpq_t(), MPFR_RNDU);
  mpfr_pow(hi.x, hi.x, t.x, MPFR_RNDU);
  return BoundValue::enclosure(mpfr_to_q(lo.x), mpfr_to_q(hi.x));
}

}  // namespace noether
