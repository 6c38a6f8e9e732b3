#include "noetherbound/engine.hpp"

#include <algorithm>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>

#include "noetherbound/atlas.hpp"

namespace noether {

namespace {

// thrown when a rule does not apply to the subject (side condition fails,
// wrong premise shape); derive treats it as "skip", the checker as "reject"
struct RuleFail : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RuleMeta {
  const char* anchor;
  bool external;
};

const std::map<std::string, RuleMeta>& rule_table() {
  static const std::map<std::string, RuleMeta> t = {
      {"noether", {"Noether's degree bound: beta(G) <= |G|", false}},
      {"three_quarters", {"beta(G) <= (3/4)|G| for every non-cyclic finite group", false}},
      {"subgroup_monotone", {"beta(G) >= beta(H) for every subgroup H <= G", false}},
      {"mul_normal", {"beta(G) <= beta(N) beta(G/N) for N normal in G", false}},
      {"index_subgroup", {"beta(G) <= |G:H| beta(H) for H <= G", false}},
      {"section", {"beta(G) <= (|G|/|E|) beta(E) for a section E of G", false}},
      {"olson_exact", {"Olson: beta(Z_p^k) = k(p-1) + 1", false}},
      {"abelian_exact", {"beta of an abelian group is its Davenport constant", false}},
      {"dihedral_exact", {"beta(D_2n) = n + 1", false}},
      {"pq3_exact", {"Pawale: beta(Z_p : Z_3) = p + 2", true}},
      {"q08", {"beta(Z_p : Z_q) <= p q^(4/5) for prime q dividing p - 1", true}},
      {"m4", {"beta(Z_p : Z_4) <= p + 6", true}},
      {"prootn",
       {"beta(Z_p : Z_n) < 2 p sqrt(n) for n >= 6 when r^2 n <= p^2 for every prime r | n",
        false}},
      {"pointnine", {"beta(Z_p : Z_m) <= p m^(9/10)", false}},
      {"nilpotent_C",
       {"beta(G) <= |C|^(1/5) |G|^(4/5) for nilpotent G with characteristic cyclic C", false}},
      {"solvable_C",
       {"beta(G) <= |C|^(1/10) |G|^(9/10) for solvable G with characteristic cyclic C", false}},
      {"nonsolvable_27", {"n(G) > 2.7 for every nonsolvable G", false}},
      {"minimal_simple_formulas",
       {"minimal simple configurations: n(G) >= 8k/(2k+3), 9k/(3k+2), 6k/(2k+1)", true}},
      {"small_nonsolvable",
       {"beta(G) < |G|/2.7 < |G|^(39/40) for nonsolvable G with |G| < 2.7^40", false}},
      {"lie_table",
       {"tabulated elementary abelian subgroups of the simple groups of Lie type", true}},
      {"lie_3940", {"beta(S) <= |S|^(39/40) for S simple of Lie type", false}},
      {"psl2_p",
       {"beta(PSL(2,p)) <= (p+1) p ((p-1)/2)^(9/10) for prime p >= 13, via a Borel subgroup",
        false}},
      {"psl2_pf",
       {"n(PSL(2,p^f)) >= p^f / ((p-1)f + 1) for f > 1, via a unipotent subgroup", true}},
      {"sporadic_section",
       {"catalogued sections and subgroups of the sporadic groups", true}},
      {"alt_power2",
       {"n(A_k) >= 4^s/(2s+1), s = floor(k/4), via disjoint double transpositions", false}},
      {"out_bound",
       {"|H:S| <= |Out(S)| < |S|^(3/2)/2 for almost simple H with socle S", true}},
      {"n_from_beta", {"n(G) = |G| / beta(G)", false}},
      {"cyclic_index_solvable",
       {"solvable G has a characteristic cyclic subgroup of index at most n(G)^10", false}},
      {"cyclic_index_general",
       {"characteristic cyclic subgroup of index at most n(G)^(10 log2 k), "
        "k = max(2^10, largest alternating composition factor degree)",
        false}},
      {"cyclic_index_corollary",
       {"nonsolvable G: characteristic cyclic subgroup of index at most "
        "n(G)^(100 + 10 log2 log2 n(G))",
        false}},
  };
  return t;
}

const RuleMeta& rule_meta(const std::string& rule) {
  auto it = rule_table().find(rule);
  if (it == rule_table().end()) throw RuleFail("unknown rule " + rule);
  return it->second;
}

bool is_upper_goal(const std::string& goal) {
  return goal == "beta_upper" || goal == "n_upper" || goal == "index_upper";
}

bool bounds_beta_above(const Certificate& c) {
  return c.goal == "beta_upper" || c.goal == "exact";
}
bool bounds_beta_below(const Certificate& c) {
  return c.goal == "beta_lower" || c.goal == "exact";
}

const Certificate& sole_premise(const std::vector<CertPtr>& ps) {
  if (ps.size() != 1 || !ps[0]) throw RuleFail("expected exactly one premise");
  return *ps[0];
}

void need(bool ok, const char* msg) {
  if (!ok) throw RuleFail(msg);
}

bool same_desc(const Descriptor& a, const Descriptor& b) { return a == b; }

BoundValue pow_int_bv(const BoundValue& v, unsigned long e) {
  switch (v.form()) {
    case BoundValue::Form::Exact:
      return BoundValue::exact(pow_q(v.exact_value(), (long)e));
    case BoundValue::Form::PowerProduct: {
      std::vector<PowerFactor> fs = v.factors();
      for (auto& f : fs) f.exp *= (long)e;
      return BoundValue::power_product(pow_q(v.coeff(), (long)e), std::move(fs));
    }
    case BoundValue::Form::Enclosure:
      need(v.lo() >= 0, "power of an interval crossing zero");
      return BoundValue::enclosure(pow_q(v.lo(), (long)e), pow_q(v.hi(), (long)e));
  }
  throw RuleFail("bad value form");
}

// order / v, exact on endpoints
BoundValue order_div(const mpz_class& order, const BoundValue& v) {
  switch (v.form()) {
    case BoundValue::Form::Exact:
      need(v.exact_value() > 0, "division by a nonpositive value");
      return BoundValue::exact(mpq_class(order) / v.exact_value());
    case BoundValue::Form::PowerProduct:
      return BoundValue::exact(mpq_class(order)).div(v);
    case BoundValue::Form::Enclosure:
      need(v.lo() > 0, "division by an interval touching zero");
      return BoundValue::enclosure(mpq_class(order) / v.hi(), mpq_class(order) / v.lo());
  }
  throw RuleFail("bad value form");
}

// power product c1^e1 * c2^e2 with base-1 factors dropped
BoundValue pp_two(const mpz_class& b1, const mpq_class& e1, const mpz_class& b2,
                  const mpq_class& e2) {
  std::vector<PowerFactor> fs;
  if (b1 > 1) fs.push_back({b1, e1});
  if (b2 > 1) fs.push_back({b2, e2});
  return BoundValue::power_product(1, std::move(fs));
}

mpz_class pow4(unsigned long s) { return pow_z(2, 2 * s); }

struct MinimalSimpleConfig {
  const char* subgroup;
  unsigned long index_floor;
  unsigned long coeff, offset;  // beta <= coeff * k + offset
};
const MinimalSimpleConfig kMinimalSimpleConfigs[] = {
    {"elem_abelian(2,3)", 63, 2, 3},
    {"elem_abelian(3,2)", 624, 3, 2},
    {"alt(4)", 5, 4, 2},
    {"ext(elem_abelian(2,2); cyclic(3))", 5, 4, 2},
};

// Davenport values are shared across derive, replay and the checker; the
// search can take seconds, so cache per (group, node budget).
std::optional<mpz_class> davenport_cached(const FiniteAbelianGroup& G,
                                          const SearchBudget& budget) {
  static std::mutex mu;
  static std::map<std::string, std::optional<mpz_class>> cache;
  std::ostringstream key;
  key << G.to_string() << "#" << budget.max_nodes << "#" << budget.max_order;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key.str());
    if (it != cache.end()) return it->second;
  }
  std::optional<mpz_class> value;
  try {
    value = davenport_constant(G, budget).value;
  } catch (const BudgetError&) {
    value = std::nullopt;
  }
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(key.str(), value);
  return value;
}

// ---------------------------------------------------------------------------
// replay_rule: the single definition of what every rule computes. Both the
// deriver (to fill in values) and the checker (to validate claims) call this.
// ---------------------------------------------------------------------------
BoundValue replay_rule(const std::string& rule, const std::string& goal, const Descriptor& d,
                       const std::vector<CertPtr>& ps, const EngineOptions& opts) {
  const mpz_class order = d.order();

  auto beta_goal = [&] {
    need(goal == "beta_upper", "rule emits beta_upper only");
    return true;
  };
  auto exactish_goal = [&] {
    need(goal == "exact" || goal == "beta_upper" || goal == "beta_lower",
         "rule emits exact beta values only");
    return true;
  };
  auto no_premises = [&] {
    need(ps.empty(), "rule takes no premises");
    return true;
  };
  auto upper_premise_for = [&](const Descriptor& subject) -> const Certificate& {
    const Certificate& p = sole_premise(ps);
    need(bounds_beta_above(p), "premise must bound beta from above");
    need(same_desc(*p.subject, subject), "premise subject mismatch");
    return p;
  };

  if (rule == "noether") {
    beta_goal();
    no_premises();
    return BoundValue::exact_int(order);
  }

  if (rule == "three_quarters") {
    beta_goal();
    no_premises();
    need(d.noncyclic(), "subject not known to be non-cyclic");
    return BoundValue::exact(mpq_class(mpz_class(3 * order)) / 4);
  }

  if (rule == "abelian_exact") {
    exactish_goal();
    no_premises();
    auto ab = d.as_abelian();
    need(ab.has_value(), "subject is not a known abelian group");
    auto v = davenport_cached(*ab, opts.budget);
    if (!v) throw BudgetError("davenport search exceeded its budget for " + ab->to_string());
    return BoundValue::exact_int(*v);
  }

  if (rule == "olson_exact") {
    exactish_goal();
    no_premises();
    need(d.kind == Kind::ElemAbelian, "subject is not elementary abelian");
    return BoundValue::exact_int(mpz_class(d.k) * (d.p - 1) + 1);
  }

  if (rule == "dihedral_exact") {
    exactish_goal();
    no_premises();
    if (d.kind == Kind::Dihedral) return BoundValue::exact_int(order / 2 + 1);
    need(d.kind == Kind::Frobenius && d.m == 2, "subject is not dihedral");
    return BoundValue::exact_int(mpz_class(d.p) + 1);
  }

  if (rule == "pq3_exact") {
    exactish_goal();
    no_premises();
    need(d.kind == Kind::Frobenius && d.m == 3, "subject is not Z_p : Z_3");
    return BoundValue::exact_int(mpz_class(d.p) + 2);
  }

  if (rule == "q08") {
    beta_goal();
    no_premises();
    need(d.kind == Kind::Frobenius && is_prime_ul(d.m), "subject is not Z_p : Z_q, q prime");
    return BoundValue::power_product(mpq_class(d.p), {{mpz_class(d.m), mpq_class(4, 5)}});
  }

  if (rule == "m4") {
    beta_goal();
    no_premises();
    need(d.kind == Kind::Frobenius && d.m == 4, "subject is not Z_p : Z_4");
    return BoundValue::exact_int(mpz_class(d.p) + 6);
  }

  if (rule == "prootn") {
    beta_goal();
    no_premises();
    need(d.kind == Kind::Frobenius && d.m >= 6, "subject is not Z_p : Z_n with n >= 6");
    mpz_class p2 = mpz_class(d.p) * d.p;
    for (const auto& [r, mult] : factorize(d.m))
      need(mpz_class(r) * r * d.m <= p2, "a prime divisor of n is too large");
    mpz_class twop = 2 * mpz_class(d.p);
    return BoundValue::power_product(mpq_class(twop), {{mpz_class(d.m), mpq_class(1, 2)}});
  }

  if (rule == "pointnine") {
    beta_goal();
    need(d.kind == Kind::Frobenius, "subject is not a Frobenius descriptor");
    BoundValue pinned =
        BoundValue::power_product(mpq_class(d.p), {{mpz_class(d.m), mpq_class(9, 10)}});
    const Certificate& p = upper_premise_for(d);
    need(BoundValue::cmp(p.value, pinned, opts.cmp_cap_bits) <= 0,
         "case bound exceeds p m^(9/10)");
    return pinned;
  }

  if (rule == "nilpotent_C" || rule == "solvable_C") {
    beta_goal();
    no_premises();
    need(order > 1, "trivial subject");
    auto c = d.char_cyclic();
    need(c.has_value(), "no characteristic cyclic order available");
    if (rule == "nilpotent_C") {
      auto nil = d.nilpotent();
      need(nil && *nil, "subject not known nilpotent");
      return pp_two(*c, mpq_class(1, 5), order, mpq_class(4, 5));
    }
    auto sol = d.solvable();
    need(sol && *sol, "subject not known solvable");
    return pp_two(*c, mpq_class(1, 10), order, mpq_class(9, 10));
  }

  if (rule == "mul_normal") {
    beta_goal();
    need(ps.size() >= 2, "needs at least two premises");
    for (const auto& p : ps) need(p && bounds_beta_above(*p), "premises must bound beta above");
    bool matched = false;
    if (d.kind == Kind::Ext && ps.size() == 2) {
      matched = same_desc(*ps[0]->subject, *d.normal_part) &&
                same_desc(*ps[1]->subject, *d.quotient_part);
    }
    if (!matched && d.kind == Kind::Product && ps.size() == d.children.size()) {
      matched = true;
      for (size_t i = 0; i < ps.size(); ++i)
        if (!same_desc(*ps[i]->subject, *d.children[i])) matched = false;
    }
    if (!matched && d.kind == Kind::Opaque && ps.size() == 2) {
      for (const auto& f : d.attrs.facts)
        if (f.type == Fact::Type::Normal && same_desc(*ps[0]->subject, *f.sub) &&
            same_desc(*ps[1]->subject, *f.quotient))
          matched = true;
    }
    need(matched, "premises do not decompose the subject");
    BoundValue v = ps[0]->value;
    for (size_t i = 1; i < ps.size(); ++i) v = v.mul(ps[i]->value);
    return v;
  }

  if (rule == "index_subgroup") {
    beta_goal();
    const Certificate& p = sole_premise(ps);
    need(bounds_beta_above(p), "premise must bound beta from above");
    // witnesses: a declared subgroup fact, or the cyclic-complement subgroup
    // Z_p : Z_m' <= Z_p : Z_m for m' | m
    for (const auto& f : d.attrs.facts)
      if (f.type == Fact::Type::Subgroup && same_desc(*p.subject, *f.sub))
        return p.value.scale(mpq_class(f.index));
    if (d.kind == Kind::Frobenius && p.subject->kind == Kind::Frobenius &&
        p.subject->p == d.p && d.m % p.subject->m == 0)
      return p.value.scale(mpq_class(d.m / p.subject->m));
    throw RuleFail("premise subject is not a witnessed subgroup");
  }

  if (rule == "section") {
    beta_goal();
    const Certificate& p = sole_premise(ps);
    need(bounds_beta_above(p), "premise must bound beta from above");
    for (const auto& f : d.attrs.facts)
      if (f.type == Fact::Type::Section && same_desc(*p.subject, *f.sub))
        return p.value.scale(mpq_class(order) / mpq_class(f.sub->order()));
    throw RuleFail("premise subject is not a declared section");
  }

  if (rule == "sporadic_section") {
    beta_goal();
    need(d.kind == Kind::Sporadic, "subject is not sporadic");
    const auto& datum = sporadic_datum(d.name);
    need(datum.fact.has_value(), "no catalogued section for this group");
    const Certificate& p = sole_premise(ps);
    need(bounds_beta_above(p), "premise must bound beta from above");
    need(same_desc(*p.subject, *datum.fact->sub), "premise is not the catalogued part");
    if (datum.fact->type == Fact::Type::Subgroup)
      return p.value.scale(mpq_class(datum.fact->index));
    return p.value.scale(mpq_class(order) / mpq_class(datum.fact->sub->order()));
  }

  if (rule == "nonsolvable_27") {
    beta_goal();
    no_premises();
    auto sol = d.solvable();
    need(sol && !*sol, "subject not known nonsolvable");
    return BoundValue::exact(mpq_class(mpz_class(10 * order)) / 27);
  }

  if (rule == "small_nonsolvable") {
    beta_goal();
    auto sol = d.solvable();
    need(sol && !*sol, "subject not known nonsolvable");
    // the chain beta <= |G|/2.7 <= |G|^(39/40) needs |G| < 2.7^40
    need(pow_z(10, 40) * order < pow_z(27, 40), "group order is not below 2.7^40");
    const Certificate& p = upper_premise_for(d);
    BoundValue f = BoundValue::power(order, mpq_class(39, 40));
    need(BoundValue::cmp(p.value, f, opts.cmp_cap_bits) <= 0,
         "premise bound exceeds |G|^(39/40)");
    return f;
  }

  if (rule == "lie_3940") {
    beta_goal();
    no_premises();
    need(d.kind == Kind::Lie, "subject is not of Lie type");
    return BoundValue::power(order, mpq_class(39, 40));
  }

  if (rule == "lie_table" || rule == "psl2_pf") {
    beta_goal();
    need(d.kind == Kind::Lie, "subject is not of Lie type");
    PrimePower pp = split_prime_power(d.q);
    unsigned long e;
    if (rule == "psl2_pf") {
      need(d.family == "A" && d.m == 1 && pp.f >= 2, "subject is not PSL(2,p^f) with f > 1");
      e = 1;
    } else {
      e = lie_safe_exponent(d.family, d.m);
    }
    unsigned long N = e * pp.f;
    const Certificate& p = sole_premise(ps);
    need(bounds_beta_above(p), "premise must bound beta from above");
    need(p.subject->kind == Kind::ElemAbelian && mpz_class(p.subject->p) == pp.p &&
             p.subject->k == N,
         "premise is not the tabulated elementary abelian subgroup");
    return p.value.scale(mpq_class(order) / mpq_class(pow_z(pp.p, N)));
  }

  if (rule == "psl2_p") {
    beta_goal();
    need(d.kind == Kind::Lie && d.family == "A" && d.m == 1, "subject is not PSL(2,q)");
    need(is_prime(d.q) && d.q >= 13, "field size must be a prime >= 13");
    unsigned long p0 = d.q.get_ui();
    const Certificate& p = sole_premise(ps);
    need(bounds_beta_above(p), "premise must bound beta from above");
    need(p.subject->kind == Kind::Frobenius && p.subject->p == p0 &&
             p.subject->m == (p0 - 1) / 2,
         "premise is not the Borel subgroup Z_p : Z_((p-1)/2)");
    return p.value.scale(mpq_class(p0 + 1));
  }

  if (rule == "alt_power2") {
    beta_goal();
    need(d.kind == Kind::Alt && d.k >= 4, "subject is not alt(k), k >= 4");
    unsigned long s = d.k / 4;
    const Certificate& p = sole_premise(ps);
    need(bounds_beta_above(p), "premise must bound beta from above");
    need(p.subject->kind == Kind::ElemAbelian && p.subject->p == 2 && p.subject->k == 2 * s,
         "premise is not the 2^(2s) subgroup");
    return p.value.scale(mpq_class(order) / mpq_class(pow4(s)));
  }

  if (rule == "minimal_simple_formulas") {
    beta_goal();
    no_premises();
    auto sol = d.solvable();
    need(sol && !*sol, "subject not known nonsolvable");
    for (const auto& f : d.attrs.facts) {
      if (f.type != Fact::Type::Subgroup) continue;
      std::string sub = f.sub->to_string();
      for (const auto& cfg : kMinimalSimpleConfigs) {
        if (sub != cfg.subgroup || f.index < cfg.index_floor) continue;
        return BoundValue::exact_int(cfg.coeff * f.index + cfg.offset);
      }
    }
    throw RuleFail("no minimal simple configuration fact present");
  }

  if (rule == "out_bound") {
    beta_goal();
    need(d.kind == Kind::Ext, "subject is not an extension");
    const Descriptor& S = *d.normal_part;
    bool simple_kind = S.kind == Kind::Lie || S.kind == Kind::Sporadic ||
                       S.kind == Kind::Tits || (S.kind == Kind::Alt && S.k >= 5);
    need(simple_kind, "socle is not a catalogued simple group");
    mpz_class s_ord = S.order(), q_ord = d.quotient_part->order();
    need(4 * q_ord * q_ord <= s_ord * s_ord * s_ord,
         "quotient too large for the outer automorphism bound");
    const Certificate& p = sole_premise(ps);
    need(bounds_beta_above(p), "premise must bound beta from above");
    need(same_desc(*p.subject, S), "premise subject must be the socle");
    return p.value.mul(BoundValue::power(s_ord, mpq_class(3, 2))).scale(mpq_class(1, 2));
  }

  if (rule == "subgroup_monotone") {
    need(goal == "beta_lower", "rule emits beta_lower only");
    const Certificate& p = sole_premise(ps);
    need(bounds_beta_below(p), "premise must bound beta from below");
    const Descriptor& H = *p.subject;
    bool witnessed = H.kind == Kind::Trivial;
    if (!witnessed && d.kind == Kind::Ext) witnessed = same_desc(H, *d.normal_part);
    if (!witnessed && d.kind == Kind::Product)
      for (const auto& c : d.children)
        if (same_desc(H, *c)) witnessed = true;
    if (!witnessed)
      for (const auto& f : d.attrs.facts)
        if ((f.type == Fact::Type::Subgroup || f.type == Fact::Type::Normal) &&
            same_desc(H, *f.sub))
          witnessed = true;
    if (!witnessed && H.kind == Kind::Cyclic) {
      auto M = d.max_elem_order();
      witnessed = M.has_value() && H.n == *M;
    }
    need(witnessed, "premise subject is not a witnessed subgroup");
    return p.value;
  }

  if (rule == "n_from_beta") {
    const Certificate& p = sole_premise(ps);
    need(same_desc(*p.subject, d), "premise subject mismatch");
    if (goal == "n_lower") {
      need(bounds_beta_above(p), "n_lower needs a beta upper bound");
    } else {
      need(goal == "n_upper", "rule emits n bounds only");
      need(bounds_beta_below(p), "n_upper needs a beta lower bound");
    }
    return order_div(order, p.value);
  }

  if (rule == "cyclic_index_solvable" || rule == "cyclic_index_general" ||
      rule == "cyclic_index_corollary") {
    need(goal == "index_upper", "rule emits index_upper only");
    const Certificate& p = sole_premise(ps);
    need(p.goal == "n_upper", "premise must bound n from above");
    need(same_desc(*p.subject, d), "premise subject mismatch");
    const BoundValue& nv = p.value;
    if (rule == "cyclic_index_solvable") {
      auto sol = d.solvable();
      need(sol && *sol, "subject not known solvable");
      return pow_int_bv(nv, 10);
    }
    if (rule == "cyclic_index_general") {
      auto deg = d.alt_degree();
      need(deg.has_value(), "largest alternating factor degree unknown");
      unsigned long k = std::max<unsigned long>(1024, *deg);
      if ((k & (k - 1)) == 0) {  // power of two: exponent 10 log2 k is exact
        unsigned long log2k = 0;
        while ((1ul << log2k) < k) ++log2k;
        return pow_int_bv(nv, 10 * log2k);
      }
      BoundValue exponent =
          log2_enclosure(BoundValue::exact_int(mpz_class(k)), opts.precision_bits)
              .scale(10);
      return pow_enclosure(nv, exponent, opts.precision_bits);
    }
    auto sol = d.solvable();
    need(sol && !*sol, "subject not known nonsolvable");
    need(BoundValue::cmp(nv, BoundValue::exact_int(2), opts.cmp_cap_bits) > 0,
         "n estimate not above 2");
    BoundValue l1 = log2_enclosure(nv, opts.precision_bits);
    BoundValue l2 = log2_enclosure(l1, opts.precision_bits);
    BoundValue exponent = l2.scale(10).add(BoundValue::exact_int(100));
    return pow_enclosure(nv, exponent, opts.precision_bits);
  }

  throw RuleFail("unknown rule " + rule);
}

std::string q_param(const mpz_class& v) { return v.get_str(); }

}  // namespace

// ---------------------------------------------------------------------------
// derivation
// ---------------------------------------------------------------------------

namespace {

CertPtr build_cert(const std::string& goal, const DescPtr& subject, const std::string& rule,
                   std::vector<CertPtr> premises,
                   std::vector<std::pair<std::string, std::string>> params,
                   const EngineOptions& opts) {
  auto c = std::make_shared<Certificate>();
  c->goal = goal;
  c->subject = subject;
  c->rule = rule;
  c->premises = std::move(premises);
  c->params = std::move(params);
  const RuleMeta& meta = rule_meta(rule);
  c->external = meta.external;
  c->anchor = meta.anchor;
  c->value = replay_rule(rule, goal, *subject, c->premises, opts);
  return c;
}

int value_form_rank(const BoundValue& v) {
  switch (v.form()) {
    case BoundValue::Form::Exact:
      return 0;
    case BoundValue::Form::PowerProduct:
      return 1;
    case BoundValue::Form::Enclosure:
      return 2;
  }
  return 3;
}

}  // namespace

std::vector<CertPtr> Engine::derive_candidates(const DescPtr& d, const std::string& goal) {
  auto key = std::make_pair(d->to_string(), goal);
  if (auto it = cand_memo_.find(key); it != cand_memo_.end()) return it->second;
  // cycle guard: a self-referential derivation (e.g. through a fact naming the
  // subject itself) contributes nothing rather than recursing forever
  if (!active_.insert(key).second) return {};
  struct Deactivate {
    std::set<std::pair<std::string, std::string>>& s;
    std::pair<std::string, std::string> k;
    ~Deactivate() { s.erase(k); }
  } deactivate{active_, key};

  std::vector<CertPtr> out;
  auto try_add = [&](const std::string& rule, std::vector<CertPtr> premises,
                     std::vector<std::pair<std::string, std::string>> params = {}) {
    try {
      out.push_back(build_cert(goal, d, rule, std::move(premises), std::move(params), opts_));
    } catch (const std::exception&) {
      // rule does not apply (side condition, budget, missing premise)
    }
  };
  // premise derivations may legitimately fail (e.g. opaque parts)
  auto try_derive = [&](const DescPtr& sub, const std::string& g) -> CertPtr {
    try {
      return derive(sub, g);
    } catch (const std::exception&) {
      return nullptr;
    }
  };

  if (goal == "n_lower" || goal == "n_upper") {
    std::string src = goal == "n_lower" ? "beta_upper" : "beta_lower";
    for (const auto& p : derive_candidates(d, src)) try_add("n_from_beta", {p});
  } else if (goal == "exact") {
    try_add("abelian_exact", {});
    try_add("dihedral_exact", {});
    try_add("olson_exact", {});
    try_add("pq3_exact", {});
  } else if (goal == "beta_lower") {
    try_add("abelian_exact", {});
    try_add("dihedral_exact", {});
    try_add("olson_exact", {});
    try_add("pq3_exact", {});
    std::vector<std::pair<DescPtr, std::string>> witnesses;
    if (d->kind != Kind::Trivial) witnesses.emplace_back(make_trivial(), "trivial subgroup");
    if (auto M = d->max_elem_order(); M && *M >= 2) {
      DescPtr cyc = make_cyclic(*M);
      if (!same_desc(*cyc, *d)) witnesses.emplace_back(cyc, "cyclic of maximal element order");
    }
    if (d->kind == Kind::Ext) witnesses.emplace_back(d->normal_part, "normal part");
    if (d->kind == Kind::Product)
      for (const auto& c : d->children) witnesses.emplace_back(c, "direct factor");
    for (const auto& f : d->attrs.facts)
      if (f.type == Fact::Type::Subgroup || f.type == Fact::Type::Normal)
        witnesses.emplace_back(f.sub, "declared subgroup");
    for (const auto& [H, how] : witnesses) {
      if (CertPtr p = try_derive(H, "beta_lower"))
        try_add("subgroup_monotone", {p}, {{"witness", how}});
    }
  } else if (goal == "beta_upper") {
    try_add("abelian_exact", {});

    if (d->kind == Kind::Alt && d->k >= 4) {
      unsigned long s = d->k / 4;
      if (CertPtr p = try_derive(make_elem_abelian(2, 2 * s), "beta_upper"))
        try_add("alt_power2", {p}, {{"s", std::to_string(s)}});
    }

    {
      std::vector<std::pair<std::string, std::string>> dp;
      if (d->kind == Kind::Dihedral)
        dp = {{"case", is_prime(mpz_class(d->n / 2)) ? "prime rotation order"
                                                     : "composite rotation order"}};
      else if (d->kind == Kind::Frobenius && d->m == 2)
        dp = {{"case", "prime rotation order"}};
      try_add("dihedral_exact", {}, std::move(dp));
    }

    for (const auto& f : d->attrs.facts) {
      if (f.type == Fact::Type::Subgroup) {
        if (CertPtr p = try_derive(f.sub, "beta_upper"))
          try_add("index_subgroup", {p}, {{"index", q_param(f.index)}});
      } else if (f.type == Fact::Type::Section) {
        if (CertPtr p = try_derive(f.sub, "beta_upper"))
          try_add("section", {p}, {{"section_order", q_param(f.sub->order())}});
      }
    }

    try_add("lie_3940", {});

    if (d->kind == Kind::Lie) {
      try {
        PrimePower pp = split_prime_power(d->q);
        unsigned long e = lie_safe_exponent(d->family, d->m);
        unsigned long N = e * pp.f;
        unsigned long p0 = pp.p.get_ui();
        if (CertPtr p = try_derive(make_elem_abelian(p0, N), "beta_upper"))
          try_add("lie_table", {p},
                  {{"p", std::to_string(p0)},
                   {"f", std::to_string(pp.f)},
                   {"e", std::to_string(e)}});
        if (d->family == "A" && d->m == 1 && pp.f >= 2) {
          if (CertPtr p = try_derive(make_elem_abelian(p0, pp.f), "beta_upper"))
            try_add("psl2_pf", {p},
                    {{"p", std::to_string(p0)}, {"f", std::to_string(pp.f)}});
        }
      } catch (const std::exception&) {
      }
    }

    try_add("m4", {});

    if (d->kind == Kind::Opaque) {
      for (const auto& f : d->attrs.facts) {
        if (f.type != Fact::Type::Subgroup) continue;
        for (const auto& cfg : kMinimalSimpleConfigs) {
          if (f.sub->to_string() == cfg.subgroup && f.index >= cfg.index_floor) {
            try_add("minimal_simple_formulas", {},
                    {{"configuration", cfg.subgroup}, {"index", q_param(f.index)}});
            break;
          }
        }
      }
    }

    {
      std::vector<std::pair<DescPtr, DescPtr>> decomps;
      if (d->kind == Kind::Ext) decomps.emplace_back(d->normal_part, d->quotient_part);
      for (const auto& f : d->attrs.facts)
        if (f.type == Fact::Type::Normal) decomps.emplace_back(f.sub, f.quotient);
      for (const auto& [N, Q] : decomps) {
        CertPtr a = try_derive(N, "beta_upper"), b = try_derive(Q, "beta_upper");
        if (a && b) try_add("mul_normal", {a, b});
      }
      if (d->kind == Kind::Product) {
        std::vector<CertPtr> parts;
        for (const auto& c : d->children)
          if (CertPtr p = try_derive(c, "beta_upper")) parts.push_back(p);
        if (parts.size() == d->children.size()) try_add("mul_normal", std::move(parts));
      }
    }

    if (auto c = d->char_cyclic()) {
      try_add("nilpotent_C", {}, {{"c", q_param(*c)}});
      try_add("solvable_C", {}, {{"c", q_param(*c)}});
    }

    try_add("noether", {});
    try_add("nonsolvable_27", {});
    try_add("olson_exact", {});

    if (d->kind == Kind::Ext) {
      if (CertPtr p = try_derive(d->normal_part, "beta_upper")) try_add("out_bound", {p});
    }

    if (d->kind == Kind::Frobenius) {
      // the case analysis behind the m^(9/10) bound, pinned explicitly
      CertPtr case_cert;
      try {
        if (is_prime_ul(d->m)) {
          case_cert = build_cert("beta_upper", d, "q08", {}, {}, opts_);
        } else if (d->m == 4) {
          case_cert = build_cert("beta_upper", d, "m4", {}, {}, opts_);
        } else {
          mpz_class p2 = mpz_class(d->p) * d->p;
          unsigned long big_q = 0;
          for (const auto& [r, mult] : factorize(d->m))
            if (mpz_class(r) * r * d->m > p2) big_q = std::max(big_q, r);
          if (big_q) {
            DescPtr sub = make_frobenius(d->p, big_q);
            CertPtr inner = build_cert("beta_upper", sub, "q08", {}, {}, opts_);
            case_cert = build_cert("beta_upper", d, "index_subgroup", {inner},
                                   {{"index", std::to_string(d->m / big_q)}}, opts_);
          } else {
            case_cert = build_cert("beta_upper", d, "prootn", {}, {}, opts_);
          }
        }
      } catch (const std::exception&) {
      }
      if (case_cert) {
        std::string how = case_cert->rule == "q08"   ? "prime order complement"
                          : case_cert->rule == "m4"  ? "order four complement"
                          : case_cert->rule == "prootn" ? "all prime divisors small"
                                                        : "large prime divisor subgroup";
        try_add("pointnine", {case_cert}, {{"case", how}});
      }
      try_add("q08", {});
      try_add("prootn", {});
    }

    try_add("pq3_exact", {});

    if (d->kind == Kind::Lie && d->family == "A" && d->m == 1 && is_prime(d->q) &&
        d->q >= 13) {
      unsigned long p0 = d->q.get_ui();
      try {
        DescPtr borel = make_frobenius(p0, (p0 - 1) / 2);
        auto borel_cands = derive_candidates(borel, "beta_upper");
        CertPtr pn;
        for (const auto& c : borel_cands)
          if (c->rule == "pointnine") pn = c;
        if (pn) try_add("psl2_p", {pn}, {{"p", std::to_string(p0)}});
      } catch (const std::exception&) {
      }
    }

    if (d->kind == Kind::Sporadic) {
      const auto& datum = sporadic_datum(d->name);
      if (datum.fact) {
        if (CertPtr p = try_derive(datum.fact->sub, "beta_upper")) {
          std::vector<std::pair<std::string, std::string>> params;
          if (datum.fact->type == Fact::Type::Subgroup)
            params = {{"kind", "subgroup"}, {"index", q_param(datum.fact->index)}};
          else
            params = {{"kind", "section"}, {"section_order", q_param(datum.fact->sub->order())}};
          try_add("sporadic_section", {p}, std::move(params));
        }
      }
    }

    // the trivial-to-sharp chain: |G|/2.7 relaxed to |G|^(39/40)
    try {
      CertPtr ns = build_cert("beta_upper", d, "nonsolvable_27", {}, {}, opts_);
      try_add("small_nonsolvable", {ns});
    } catch (const std::exception&) {
    }

    try_add("three_quarters", {});
  } else {
    throw EngineError("unknown goal " + goal);
  }

  bool minimize = is_upper_goal(goal) || goal == "exact";
  auto better = [&](const CertPtr& a, const CertPtr& b) {
    int c = 0;
    try {
      c = BoundValue::cmp(a->value, b->value, opts_.cmp_cap_bits);
    } catch (const ComparisonError&) {
      c = 0;  // tie-break below
    }
    if (c != 0) return minimize ? c < 0 : c > 0;
    int fa = value_form_rank(a->value), fb = value_form_rank(b->value);
    if (fa != fb) return fa < fb;
    if (a->rule != b->rule) return a->rule < b->rule;
    return certificate_to_string(*a) < certificate_to_string(*b);
  };
  std::stable_sort(out.begin(), out.end(), better);

  cand_memo_.emplace(key, out);
  return out;
}

CertPtr Engine::derive(const DescPtr& d, const std::string& goal) {
  auto key = std::make_pair(d->to_string(), goal);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;

  std::vector<CertPtr> cands = derive_candidates(d, goal);
  if (cands.empty()) {
    if (goal == "exact")
      throw EngineError("no exact rule applies to " + d->to_string());
    throw EngineError("no rule applies to " + d->to_string() + " for goal " + goal);
  }
  if (goal == "beta_upper" && d->kind == Kind::Opaque && cands.size() == 1 &&
      cands[0]->rule == "noether")
    throw EngineError("no bound beyond beta <= |G| for " + d->to_string() +
                      ": opaque descriptor without usable facts");

  memo_.emplace(key, cands.front());
  return cands.front();
}

Engine::IndexResult Engine::certify_cyclic_index(const DescPtr& d) {
  CertPtr n_up = derive(d, "n_upper");
  auto sol = d->solvable();
  auto deg = d->alt_degree();

  auto make_index = [&](const std::string& rule) {
    std::vector<std::pair<std::string, std::string>> params;
    if (rule == "cyclic_index_solvable") {
      params = {{"exponent", "10"}};
    } else if (rule == "cyclic_index_general") {
      unsigned long k = std::max<unsigned long>(1024, deg ? *deg : 0);
      params = {{"k", std::to_string(k)}};
      if ((k & (k - 1)) == 0) {
        unsigned long log2k = 0;
        while ((1ul << log2k) < k) ++log2k;
        params.emplace_back("exponent", std::to_string(10 * log2k));
      }
    }
    return build_cert("index_upper", d, rule, {n_up}, std::move(params), opts_);
  };

  IndexResult r;
  if (sol && *sol) {
    r.main = make_index("cyclic_index_solvable");
    return r;
  }
  if (deg.has_value()) {
    r.main = make_index("cyclic_index_general");
    if (sol && !*sol) r.corollary = make_index("cyclic_index_corollary");
    return r;
  }
  if (sol && !*sol) {
    r.main = make_index("cyclic_index_corollary");
    r.corollary = r.main;
    return r;
  }
  throw EngineError(
      "cyclic index certificate needs known solvability or a known largest "
      "alternating factor degree for " +
      d->to_string());
}

// ---------------------------------------------------------------------------
// checking
// ---------------------------------------------------------------------------

namespace {

bool check_node(const Certificate& c, const std::string& path, std::string* why,
                const EngineOptions& opts) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = path + ": " + msg;
    return false;
  };
  static const std::set<std::string> kGoals = {"exact",   "beta_upper", "beta_lower",
                                               "n_lower", "n_upper",    "index_upper"};
  if (!kGoals.count(c.goal)) return fail("unknown goal " + c.goal);
  if (!c.subject) return fail("missing subject");

  const RuleMeta* meta;
  try {
    meta = &rule_meta(c.rule);
  } catch (const std::exception&) {
    return fail("unknown rule " + c.rule);
  }
  if (c.external != meta->external) return fail("external flag does not match the rule");
  if (c.anchor != meta->anchor) return fail("anchor does not match the rule");

  for (size_t i = 0; i < c.premises.size(); ++i) {
    if (!c.premises[i]) return fail("null premise");
    if (!check_node(*c.premises[i], path + ".premises[" + std::to_string(i) + "]", why, opts))
      return false;
  }

  BoundValue formula;
  try {
    formula = replay_rule(c.rule, c.goal, *c.subject, c.premises, opts);
  } catch (const std::exception& e) {
    return fail(std::string("replay failed: ") + e.what());
  }

  if (c.value == formula) return true;
  int cmp;
  try {
    cmp = BoundValue::cmp(formula, c.value, opts.cmp_cap_bits);
  } catch (const std::exception&) {
    return fail("claimed value cannot be separated from the rule formula");
  }
  bool ok = c.goal == "exact" ? cmp == 0 : is_upper_goal(c.goal) ? cmp <= 0 : cmp >= 0;
  if (!ok) return fail("claimed value is not implied by the rule formula");
  return true;
}

}  // namespace

bool check_certificate(const Certificate& c, std::string* why, const EngineOptions& opts) {
  try {
    return check_node(c, "root", why, opts);
  } catch (const std::exception& e) {
    if (why) *why = std::string("root: ") + e.what();
    return false;
  }
}

}  // namespace noether
