#include <vector>

#include "doctest.h"
#include "noetherbound/engine.hpp"

using namespace noether;

namespace {

Engine& eng() {
  static Engine e;  // shared so the Davenport cache warms once
  return e;
}

DescPtr D(const std::string& s) { return parse_descriptor(s); }

CertPtr derive_upper(const std::string& s) { return eng().derive(D(s), "beta_upper"); }

bool value_is(const CertPtr& c, const mpq_class& v) {
  return c->value.is_exact() && c->value.exact_value() == v;
}

// strict bracket for irrational bounds: lo < value < hi
bool value_between(const CertPtr& c, const mpz_class& lo, const mpz_class& hi) {
  return BoundValue::cmp(c->value, BoundValue::exact_int(lo)) == 1 &&
         BoundValue::cmp(c->value, BoundValue::exact_int(hi)) == -1;
}

bool checks_out(const CertPtr& c) {
  std::string why;
  bool ok = check_certificate(*c, &why);
  if (!ok) MESSAGE("check failed: ", why);
  return ok;
}

}  // namespace

TEST_CASE("exact values for groups with closed formulas") {
  struct Row {
    const char* desc;
    const char* rule;
    long value;
  };
  const Row rows[] = {
      {"cyclic(12)", "abelian_exact", 12},
      {"abelian(2,4)", "abelian_exact", 5},
      {"elem_abelian(3,3)", "abelian_exact", 7},
      {"abelian(6,6)", "abelian_exact", 11},
      {"dihedral(20)", "dihedral_exact", 11},
      {"frobenius(7,3)", "pq3_exact", 9},
  };
  for (const auto& r : rows) {
    auto c = eng().derive(D(r.desc), "exact");
    INFO(r.desc);
    CHECK(c->rule == r.rule);
    CHECK(value_is(c, r.value));
    CHECK(checks_out(c));
  }
}

TEST_CASE("upper bounds pick the strongest applicable rule") {
  struct Row {
    const char* desc;
    const char* rule;
  };
  SUBCASE("exact rules win when available") {
    auto c = derive_upper("cyclic(1000003)");
    CHECK(c->rule == "abelian_exact");
    CHECK(value_is(c, 1000003));
    CHECK(value_is(derive_upper("elem_abelian(2,10)"), 11));
    CHECK(value_is(derive_upper("dihedral(1000)"), 501));
  }
  SUBCASE("Frobenius case ladder by complement order") {
    auto m2 = derive_upper("frobenius(13,2)");
    CHECK(m2->rule == "dihedral_exact");
    CHECK(value_is(m2, 14));
    auto m3 = derive_upper("frobenius(13,3)");
    CHECK(m3->rule == "pq3_exact");
    CHECK(value_is(m3, 15));
    auto m4 = derive_upper("frobenius(13,4)");
    CHECK(m4->rule == "m4");
    CHECK(value_is(m4, 19));
    auto m6 = derive_upper("frobenius(13,6)");
    CHECK(m6->rule == "three_quarters");
    CHECK(value_is(m6, mpq_class(117, 2)));
    auto m12 = derive_upper("frobenius(13,12)");
    CHECK(m12->rule == "prootn");  // 26 sqrt(12)
    CHECK(value_between(m12, 90, 91));
    auto q5 = derive_upper("frobenius(61,5)");
    CHECK(q5->rule == "q08");  // 61 * 5^(4/5)
    CHECK(value_between(q5, 221, 222));
    auto big = derive_upper("frobenius(1009,1008)");
    CHECK(big->rule == "prootn");  // 2018 sqrt(1008)
    CHECK(value_between(big, 64069, 64070));
    for (auto c : {m2, m3, m4, m6, m12, q5, big}) CHECK(checks_out(c));
  }
  SUBCASE("normal-series products beat coarse fractions") {
    auto c = derive_upper("ext(cyclic(2); elem_abelian(2,4))");
    CHECK(c->rule == "mul_normal");
    CHECK(value_is(c, 10));  // 2 * 5, against 3/4 * 32 = 24
    bool saw_three_quarters = false;
    for (const auto& cand : eng().derive_candidates(D("ext(cyclic(2); elem_abelian(2,4))"),
                                                    "beta_upper"))
      if (cand->rule == "three_quarters") {
        saw_three_quarters = true;
        CHECK(value_is(cand, 24));
      }
    CHECK(saw_three_quarters);

    auto p = derive_upper("product(cyclic(3), dihedral(8))");
    CHECK(p->rule == "mul_normal");
    CHECK(value_is(p, 15));  // 3 * 5

    auto e = derive_upper("ext(alt(6); cyclic(2))");
    CHECK(e->rule == "mul_normal");
    CHECK(value_is(e, mpq_class(800, 3)));  // (10/27)|A6| * 2

    auto nrm = derive_upper("opaque(order=24, fact=normal(elem_abelian(2,2); cyclic(6)))");
    CHECK(nrm->rule == "mul_normal");
    CHECK(value_is(nrm, 18));  // 3 * 6
  }
  SUBCASE("nonsolvable groups get the 10/27 fraction") {
    auto a5 = derive_upper("alt(5)");
    CHECK(a5->rule == "nonsolvable_27");
    CHECK(value_is(a5, mpq_class(200, 9)));
    CHECK(value_is(derive_upper("lie(A,1,13)"), mpq_class(3640, 9)));
    CHECK(value_is(derive_upper("sporadic(M11)"), mpq_class(8800, 3)));
    CHECK(value_is(derive_upper("tits"), 6656000));
    CHECK(value_is(derive_upper("lie(2B2,2,8)"), mpq_class(291200, 27)));
  }
  SUBCASE("huge simple groups use tabulated elementary abelian subgroups") {
    auto e8 = derive_upper("lie(E8,8,2)");
    CHECK(e8->rule == "lie_table");
    CHECK(value_is(e8, mpz_class("18188112686496588622207292141278109946811590071551"
                                 "1861320089600000")));
    CHECK(checks_out(e8));

    auto alt12 = derive_upper("alt(12)");
    CHECK(alt12->rule == "alt_power2");
    CHECK(value_is(alt12, 26195400));  // |A12| * 7 / 64

    auto on = derive_upper("sporadic(ON)");
    CHECK(on->rule == "sporadic_section");
    CHECK(value_is(on, mpz_class("16000538400")));
    // strictly sharper than 2^(-1/10) |G|^(9/10)
    BoundValue target = BoundValue::power(2, mpq_class(-1, 10))
                            .mul(BoundValue::power(mpz_class("460815505920"), mpq_class(9, 10)));
    CHECK(BoundValue::cmp(on->value, target) == -1);

    auto j4 = derive_upper("sporadic(J4)");
    CHECK(j4->rule == "sporadic_section");
    CHECK(value_is(j4, mpz_class("275410747948976640")));
  }
  SUBCASE("opaque nodes lean on their facts") {
    auto c = derive_upper("opaque(order=720, solvable=false, fact=subgroup(alt(4), index=60))");
    CHECK(c->rule == "minimal_simple_formulas");
    CHECK(value_is(c, 242));  // 4 * 60 + 2
    CHECK(checks_out(c));
  }
}

TEST_CASE("PSL(2,p) candidate chain") {
  auto cands = eng().derive_candidates(D("lie(A,1,13)"), "beta_upper");
  REQUIRE(cands.size() >= 5);
  CHECK(cands.front()->rule == "nonsolvable_27");

  CertPtr psl, table39;
  for (const auto& c : cands) {
    if (c->rule == "psl2_p") psl = c;
    if (c->rule == "lie_3940") table39 = c;
  }
  REQUIRE(psl);
  REQUIRE(table39);
  // 14 * 13 * 6^(9/10) sits strictly inside (912, 914)
  CHECK(value_between(psl, 912, 914));
  // 1092^(39/40) sits strictly inside (916, 917)
  CHECK(value_between(table39, 916, 917));
  CHECK(BoundValue::cmp(psl->value, table39->value) == -1);
  // the chain rests on the Borel subgroup's 0.9-exponent bound
  REQUIRE(psl->premises.size() == 1);
  CHECK(psl->premises[0]->rule == "pointnine");
  CHECK(psl->premises[0]->subject->to_string() == "frobenius(13,6)");
  CHECK(checks_out(psl));
  CHECK(checks_out(table39));
}

TEST_CASE("lower bounds") {
  auto d20 = eng().derive(D("dihedral(20)"), "beta_lower");
  CHECK(value_is(d20, 11));
  auto ab = eng().derive(D("abelian(6,6)"), "beta_lower");
  CHECK(value_is(ab, 11));
  // a product inherits the best child bound
  auto pr = eng().derive(D("product(cyclic(3), dihedral(8))"), "beta_lower");
  CHECK(pr->rule == "subgroup_monotone");
  CHECK(value_is(pr, 5));
  // a normal-subgroup fact is a subgroup witness
  auto nf = eng().derive(D("opaque(order=24, fact=normal(elem_abelian(2,2); cyclic(6)))"),
                         "beta_lower");
  CHECK(nf->rule == "subgroup_monotone");
  CHECK(value_is(nf, 3));
  // with no structure at all the bound degrades to the trivial 1
  CHECK(value_is(eng().derive(D("sporadic(M11)"), "beta_lower"), 1));
  for (auto c : {d20, ab, pr, nf}) CHECK(checks_out(c));
}

TEST_CASE("Noether index bounds divide the order by the opposite beta bound") {
  auto psl = eng().derive(D("lie(A,1,13)"), "n_lower");
  CHECK(value_is(psl, mpq_class(27, 10)));  // 1092 / (3640/9)
  auto a12 = eng().derive(D("alt(12)"), "n_lower");
  CHECK(value_is(a12, mpq_class(64, 7)));  // |A12| / (|A12| 7/64)
  auto on = eng().derive(D("sporadic(ON)"), "n_lower");
  CHECK(value_is(on, mpq_class(144, 5)));
  auto e8 = eng().derive(D("lie(E8,8,2)"), "n_lower");
  CHECK(value_is(e8, mpq_class(mpz_class("68719476736"), 37)));  // 2^36 / 37

  // n >= |S|^(1/40) for these witnesses
  for (auto [c, order] : {std::pair<CertPtr, mpz_class>{psl, 1092},
                          {a12, 239500800},
                          {on, mpz_class("460815505920")}}) {
    CHECK(BoundValue::cmp(c->value, BoundValue::power(order, mpq_class(1, 40))) == 1);
  }

  auto up = eng().derive(D("opaque(order=4, solvable=true, max_elem_order=2)"), "n_upper");
  CHECK(value_is(up, 2));
  CHECK(up->rule == "n_from_beta");
  for (auto c : {psl, a12, on, e8, up}) CHECK(checks_out(c));
}

TEST_CASE("derive refuses an opaque node with nothing to work with") {
  CHECK_THROWS_WITH_AS(eng().derive(D("opaque(order=1000000)"), "beta_upper"),
                       doctest::Contains("opaque descriptor without usable facts"),
                       EngineError);
}

TEST_CASE("upper and lower candidates bracket the exact value on abelian groups") {
  for (const char* s : {"cyclic(24)", "abelian(2,4)", "abelian(6,6)", "elem_abelian(2,6)",
                        "elem_abelian(5,3)", "abelian(2,2,6)"}) {
    DescPtr d = D(s);
    auto exact = eng().derive(d, "exact");
    INFO(s, " exact ", exact->value.expr());
    for (const auto& c : eng().derive_candidates(d, "beta_upper"))
      CHECK(BoundValue::cmp(c->value, exact->value) >= 0);
    for (const auto& c : eng().derive_candidates(d, "beta_lower"))
      CHECK(BoundValue::cmp(c->value, exact->value) <= 0);
  }
}

TEST_CASE("cyclic index certificates") {
  SUBCASE("solvable groups take the tenth power") {
    auto r = eng().certify_cyclic_index(D("opaque(order=4, solvable=true, max_elem_order=2)"));
    REQUIRE(r.main);
    CHECK(r.main->rule == "cyclic_index_solvable");
    CHECK(value_is(r.main, 1024));  // 2^10
    CHECK_FALSE(r.corollary);
    CHECK(checks_out(r.main));

    auto d20 = eng().certify_cyclic_index(D("dihedral(20)"));
    CHECK(value_is(d20.main, pow_q(mpq_class(20, 11), 10)));
    CHECK(checks_out(d20.main));
  }
  SUBCASE("nonsolvable groups with a known alternating degree") {
    auto r = eng().certify_cyclic_index(D("lie(A,1,13)"));
    REQUIRE(r.main);
    CHECK(r.main->rule == "cyclic_index_general");
    // k defaults to 2^10, so the exponent collapses to the exact 100
    bool saw_exponent = false;
    for (const auto& [key, val] : r.main->params) {
      if (key == "exponent") {
        saw_exponent = true;
        CHECK(val == "100");
      }
      if (key == "k") CHECK(val == "1024");
    }
    CHECK(saw_exponent);
    CHECK(value_is(r.main, pow_q(mpq_class(1092), 100)));
    REQUIRE(r.corollary);
    CHECK(r.corollary->rule == "cyclic_index_corollary");
    CHECK(r.corollary->value.form() == BoundValue::Form::Enclosure);
    // corollary is weaker here but still finite and checkable
    CHECK(BoundValue::cmp(r.main->value, r.corollary->value) == -1);
    CHECK(checks_out(r.main));
    CHECK(checks_out(r.corollary));

    auto a12 = eng().certify_cyclic_index(D("alt(12)"));
    CHECK(value_is(a12.main, pow_q(mpq_class(239500800), 100)));
  }
  SUBCASE("nonsolvable with unknown composition factors falls back to the corollary") {
    auto r = eng().certify_cyclic_index(D("opaque(order=7920, solvable=false)"));
    REQUIRE(r.main);
    CHECK(r.main->rule == "cyclic_index_corollary");
    CHECK(r.main == r.corollary);
    CHECK(checks_out(r.main));
  }
  SUBCASE("no solvability information refuses") {
    CHECK_THROWS_AS(eng().certify_cyclic_index(D("opaque(order=7920, max_elem_order=8)")),
                    EngineError);
  }
}

TEST_CASE("alternating wrap stays useful out to degree 40") {
  // 4^s / (2s+1) > 2^(k/10) with s = floor(k/4) keeps n(A_k) above |A_k|^(1/40)
  for (unsigned long k = 11; k <= 40; ++k) {
    unsigned long s = k / 4;
    mpq_class lhs(pow_z(4, s), 2 * s + 1);
    CHECK(BoundValue::cmp(BoundValue::exact(lhs), BoundValue::power(2, mpq_class(k, 10))) == 1);
  }
}

TEST_CASE("every derived certificate replays through the checker") {
  const char* corpus[] = {
      "cyclic(360)",
      "abelian(2,4)",
      "elem_abelian(7,2)",
      "dihedral(34)",
      "frobenius(13,4)",
      "frobenius(61,5)",
      "frobenius(13,12)",
      "ext(cyclic(2); elem_abelian(2,4))",
      "product(cyclic(3), dihedral(8))",
      "alt(5)",
      "alt(12)",
      "lie(A,1,13)",
      "lie(E8,8,2)",
      "sporadic(M11)",
      "sporadic(ON)",
      "tits",
      "opaque(order=720, solvable=false, fact=subgroup(alt(4), index=60))",
  };
  for (const char* s : corpus) {
    DescPtr d = D(s);
    for (const char* goal : {"beta_upper", "beta_lower", "n_lower"}) {
      auto c = eng().derive(d, goal);
      INFO(s, " ", goal, " via ", c->rule);
      CHECK(checks_out(c));
    }
  }
}

TEST_CASE("the checker rejects tampering") {
  auto good = derive_upper("sporadic(ON)");
  std::string why;

  Certificate ext = *good;
  ext.external = !ext.external;
  CHECK_FALSE(check_certificate(ext, &why));
  CHECK(why.find("external") != std::string::npos);

  Certificate rule = *good;
  rule.rule = "made_up_rule";
  CHECK_FALSE(check_certificate(rule, &why));
  CHECK(why.find("unknown rule") != std::string::npos);

  Certificate val = *good;
  val.value = BoundValue::exact_int(1);  // claim beta <= 1
  CHECK_FALSE(check_certificate(val, &why));
  CHECK(why.find("not implied") != std::string::npos);

  Certificate goal = *good;
  goal.goal = "beta_sideways";
  CHECK_FALSE(check_certificate(goal, &why));

  Certificate anchor = *good;
  anchor.anchor = "somewhere else";
  CHECK_FALSE(check_certificate(anchor, &why));
}
