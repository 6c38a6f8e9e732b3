#include <cmath>

#include "doctest.h"
#include "noetherbound/bound_value.hpp"

using namespace noether;

namespace {

// independent double-precision estimate for sanity bands
double approx(const BoundValue& v) {
  auto [lo, hi] = v.interval(64);
  return (lo.get_d() + hi.get_d()) / 2;
}

}  // namespace

TEST_CASE("exact values and arithmetic") {
  auto a = BoundValue::exact_int(6);
  auto b = BoundValue::exact(mpq_class(3, 4));
  CHECK(a.is_exact());
  CHECK(a.mul(b).exact_value() == mpq_class(9, 2));
  CHECK(a.div(b).exact_value() == 8);
  CHECK(a.add(b).exact_value() == mpq_class(27, 4));
  CHECK(a.scale(mpq_class(1, 3)).exact_value() == 2);
  CHECK(BoundValue::cmp(a, b) == 1);
  CHECK(BoundValue::cmp(b, a) == -1);
  CHECK(BoundValue::cmp(a, BoundValue::exact_int(6)) == 0);
}

TEST_CASE("power products canonicalize") {
  // 2^(3/2) * 2^(1/2) = 4 collapses to an exact value
  auto v = BoundValue::power(2, mpq_class(3, 2)).mul(BoundValue::power(2, mpq_class(1, 2)));
  CHECK(v.is_exact());
  CHECK(v.exact_value() == 4);

  // non-integral exponents stay whole; only integral ones fold
  auto w = BoundValue::power(3, mpq_class(7, 2));
  CHECK(w.form() == BoundValue::Form::PowerProduct);
  CHECK(w.coeff() == 1);
  REQUIRE(w.factors().size() == 1);
  CHECK(w.factors()[0].base == 3);
  CHECK(w.factors()[0].exp == mpq_class(7, 2));

  // 4^(1/2) stays symbolic but compares equal to 2 by integerization
  auto r = BoundValue::power(4, mpq_class(1, 2));
  CHECK(r.form() == BoundValue::Form::PowerProduct);
  CHECK(BoundValue::cmp(r, BoundValue::exact_int(2)) == 0);
}

TEST_CASE("power product comparison is exact") {
  // 2^(1/2) = 1.4142... against 3^(1/3) = 1.4422...: decided by
  // integerization (2^3 = 8 < 9 = 3^2), not by floating point
  auto a = BoundValue::power(2, mpq_class(1, 2));
  auto b = BoundValue::power(3, mpq_class(1, 3));
  CHECK(approx(a) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(approx(b) == doctest::Approx(std::cbrt(3.0)).epsilon(1e-12));
  CHECK(BoundValue::cmp(a, b) == -1);
  CHECK(BoundValue::cmp(b, a) == 1);
  CHECK(BoundValue::cmp(a, a) == 0);
}

TEST_CASE("equal power products under different spellings") {
  // 12^(1/2) = 2 * 3^(1/2)
  auto a = BoundValue::power(12, mpq_class(1, 2));
  auto b = BoundValue::power(3, mpq_class(1, 2)).scale(2);
  CHECK(BoundValue::cmp(a, b) == 0);
}

TEST_CASE("enclosures and interval comparison") {
  auto e = BoundValue::enclosure(mpq_class(1, 3), mpq_class(1, 2));
  CHECK(e.lo() == mpq_class(1, 3));
  CHECK(e.hi() == mpq_class(1, 2));
  CHECK(BoundValue::cmp(e, BoundValue::exact_int(1)) == -1);
  CHECK(BoundValue::cmp(e, BoundValue::exact(mpq_class(1, 4))) == 1);
  // overlapping intervals cannot be separated
  auto f = BoundValue::enclosure(mpq_class(2, 5), mpq_class(3, 5));
  CHECK_THROWS_AS(BoundValue::cmp(e, f), ComparisonError);
}

TEST_CASE("interval refinement separates close power products") {
  // 2^(100/201) vs 2^(99/200): exponents differ by 1/40200
  auto a = BoundValue::power(2, mpq_class(100, 201));
  auto b = BoundValue::power(2, mpq_class(99, 200));
  CHECK(BoundValue::cmp(a, b) == 1);
}

TEST_CASE("decimal endpoints are directed") {
  auto v = BoundValue::power(2, mpq_class(1, 2));
  std::string lo = v.decimal_lo(10), hi = v.decimal_hi(10);
  CHECK(lo.substr(0, 11) == "1.414213562");
  CHECK(lo <= hi);
  CHECK(lo != hi);  // irrational: endpoints differ at the last digit
  auto x = BoundValue::exact_int(42);
  CHECK(x.decimal_lo(6) == "42");
  CHECK(x.decimal_hi(6) == "42");
}

TEST_CASE("log2 enclosure") {
  auto l = log2_enclosure(BoundValue::exact_int(1024));
  CHECK(l.form() == BoundValue::Form::Enclosure);
  CHECK(l.lo() <= 10);
  CHECK(l.hi() >= 10);
  CHECK(mpq_class(l.hi() - l.lo()) < mpq_class(1, 1000000));

  auto l2 = log2_enclosure(BoundValue::power(2, mpq_class(1, 2)));
  CHECK(l2.lo() <= mpq_class(1, 2));
  CHECK(l2.hi() >= mpq_class(1, 2));

  CHECK_THROWS(log2_enclosure(BoundValue::exact_int(0)));
}

TEST_CASE("pow enclosure") {
  auto e = pow_enclosure(BoundValue::exact_int(2), BoundValue::exact_int(10));
  CHECK(e.lo() <= 1024);
  CHECK(e.hi() >= 1024);
  CHECK(mpq_class(e.hi() - e.lo()) < 1);

  // 3^(1/2) via enclosure exponent
  auto s = pow_enclosure(BoundValue::exact_int(3),
                         BoundValue::enclosure(mpq_class(1, 2), mpq_class(1, 2)));
  CHECK(approx(s) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-9));
}

TEST_CASE("expr strings") {
  CHECK(BoundValue::exact_int(7).expr() == "7");
  auto pp = BoundValue::power_product(mpq_class(13), {{mpz_class(6), mpq_class(9, 10)}});
  CHECK(pp.expr() == "13 * 6^(9/10)");
}

TEST_CASE("the PSL(2,13) numerics from the derivation chain") {
  // 14 * 13 * 6^(9/10) lies strictly inside [912, 914]
  auto v = BoundValue::power_product(mpq_class(14 * 13), {{mpz_class(6), mpq_class(9, 10)}});
  CHECK(BoundValue::cmp(v, BoundValue::exact_int(912)) == 1);
  CHECK(BoundValue::cmp(v, BoundValue::exact_int(914)) == -1);

  // 1092^(39/40) lies strictly inside [916, 917], and v < it
  auto w = BoundValue::power(1092, mpq_class(39, 40));
  CHECK(BoundValue::cmp(w, BoundValue::exact_int(916)) == 1);
  CHECK(BoundValue::cmp(w, BoundValue::exact_int(917)) == -1);
  CHECK(BoundValue::cmp(v, w) == -1);
}

TEST_CASE("scale and add support enclosures") {
  auto e = BoundValue::enclosure(1, 2);
  auto s = e.scale(mpq_class(3, 2));
  CHECK(s.lo() == mpq_class(3, 2));
  CHECK(s.hi() == 3);
  auto t = e.add(BoundValue::exact_int(10));
  CHECK(t.lo() == 11);
  CHECK(t.hi() == 12);
}

TEST_CASE("mul and div reject enclosures") {
  auto e = BoundValue::enclosure(1, 2);
  CHECK_THROWS(e.mul(BoundValue::exact_int(2)));
  CHECK_THROWS(BoundValue::exact_int(2).div(e));
}

TEST_CASE("equality is structural") {
  auto a = BoundValue::power(2, mpq_class(1, 2));
  auto b = BoundValue::power_product(1, {{mpz_class(2), mpq_class(1, 2)}});
  CHECK(a == b);
  CHECK_FALSE(a == BoundValue::exact_int(1));
}
