// Acceptance gate: end-to-end checks of the headline guarantees, one
// pass/fail line per criterion. Exit code is the number of failed criteria.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "noetherbound/atlas.hpp"
#include "noetherbound/engine.hpp"
#include "noetherbound/monomial.hpp"

using namespace noether;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Criterion {
  bool ok = true;
  std::ostringstream notes;

  void require(bool cond, const std::string& what) {
    if (cond) return;
    ok = false;
    notes << "    " << what << "\n";
  }
};

mpz_class mult_of(const ZSequence& S, const GroupElement& g) {
  for (const auto& [e, c] : S.entries())
    if (e == g) return c;
  return 0;
}

bool has_param(const Certificate& c, const std::string& key, const std::string& val) {
  for (const auto& [k, v] : c.params)
    if (k == key && v == val) return true;
  return false;
}

bool checks(const Certificate& c, Criterion& cr, const std::string& label,
            const EngineOptions& opts = {}) {
  std::string why;
  bool ok = check_certificate(c, &why, opts);
  cr.require(ok, label + ": certificate rejected: " + why);
  return ok;
}

std::vector<unsigned long> primes_upto(unsigned long n) {
  std::vector<bool> sieve(n + 1, true);
  std::vector<unsigned long> out;
  for (unsigned long i = 2; i <= n; ++i) {
    if (!sieve[i]) continue;
    out.push_back(i);
    for (unsigned long j = i * i; j <= n; j += i) sieve[j] = false;
  }
  return out;
}

// ---------------------------------------------------------------- 1 and 2

void c1_elem_abelian_closed_form(Criterion& c) {
  auto t0 = std::chrono::steady_clock::now();
  std::set<std::pair<unsigned long, unsigned>> seen;
  for (unsigned long p : primes_upto(256)) {
    unsigned long pk = p;
    for (unsigned k = 1; pk <= 256; ++k, pk *= p) {
      auto G = FiniteAbelianGroup::elem_abelian(p, k);
      auto r = davenport_constant(G);
      std::string tag = "p=" + std::to_string(p) + " k=" + std::to_string(k);
      c.require(r.closed_form, tag + ": expected a closed form");
      c.require(r.value == mpz_class(k) * (p - 1) + 1,
                tag + ": D = " + r.value.get_str() + ", expected " +
                    mpz_class(mpz_class(k) * (p - 1) + 1).get_str());
      c.require(r.witness.length() == r.value - 1, tag + ": witness length off");
      c.require(is_zero_sum_free(r.witness), tag + ": witness is not zero-sum-free");
      seen.insert({p, k});
    }
  }
  for (auto [p, k] : std::vector<std::pair<unsigned long, unsigned>>{{3, 4}, {5, 3}, {7, 2}, {11, 2}})
    c.require(seen.count({p, k}) == 1,
              "pair p=" + std::to_string(p) + " k=" + std::to_string(k) + " not covered");
  c.require(seen.size() >= 70, "expected at least 70 (p,k) pairs, got " +
                                   std::to_string(seen.size()));
  c.require(seconds_since(t0) < 300.0, "took longer than five minutes");
}

void c2_cyclic_exact(Criterion& c) {
  auto t0 = std::chrono::steady_clock::now();
  for (unsigned long n = 1; n <= 24; ++n) {
    auto r = davenport_constant(FiniteAbelianGroup::cyclic(n));
    c.require(r.value == n, "D(Z" + std::to_string(n) + ") = " + r.value.get_str());
    c.require(r.closed_form, "Z" + std::to_string(n) + ": expected closed form");
    c.require(r.witness.length() == mpz_class(n) - 1 && is_zero_sum_free(r.witness),
              "Z" + std::to_string(n) + ": bad witness");
  }
  c.require(seconds_since(t0) < 30.0, "took longer than 30 seconds");
}

// ------------------------------------------------------------------ 3

void c3_short_zero_sum(Criterion& c) {
  std::mt19937_64 rng(20260814);
  const unsigned long ps[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31};
  int failures = 0;
  for (int iter = 0; iter < 10000 && failures < 5; ++iter) {
    unsigned long p = ps[rng() % 11];
    unsigned long h = 1 + rng() % 6;
    unsigned long slack = p * h - p;
    unsigned long L = p + rng() % (std::min<unsigned long>(10, slack) + 1);
    auto G = FiniteAbelianGroup::cyclic(p);
    std::vector<unsigned long> counts(p, 0);
    ZSequence S(G);
    for (unsigned long filled = 0; filled < L;) {
      unsigned long r = rng() % p;
      if (counts[r] >= h) continue;
      ++counts[r];
      ++filled;
      GroupElement g;
      g.coords.push_back(mpz_class(r));
      S.push(g);
    }
    std::string tag = "iter " + std::to_string(iter) + " (p=" + std::to_string(p) +
                      ", h=" + std::to_string(h) + ", |S|=" + std::to_string(L) + ")";
    try {
      ZSequence T = find_short_zero_sum(S, h);
      bool ok = !T.empty() && is_zero_sum(T) && T.length() >= 1 && T.length() <= h;
      for (const auto& [e, cnt] : T.entries())
        if (cnt > mult_of(S, e)) ok = false;
      if (!ok) {
        ++failures;
        c.require(false, tag + ": returned " + T.to_string());
      }
    } catch (const std::exception& e) {
      ++failures;
      c.require(false, tag + ": threw " + e.what());
    }
  }
}

// ------------------------------------------------------------------ 4

Monomial random_monomial(std::mt19937_64& rng) {
  size_t support = 1 + rng() % 6;
  std::vector<size_t> vars;
  for (size_t v = 1; v <= 12; ++v) vars.push_back(v);
  std::shuffle(vars.begin(), vars.end(), rng);
  Monomial f;
  for (size_t i = 0; i < support; ++i) f.set(vars[i], 1 + rng() % 7);
  return f;
}

void c4_row_decomposition(Criterion& c) {
  std::mt19937_64 rng(4242);
  int bad = 0;
  for (int iter = 0; iter < 10000 && bad < 5; ++iter) {
    Monomial f = random_monomial(rng);
    auto dec = row_decomposition(f);
    std::string tag = "monomial " + f.to_string();
    bool ok = dec.rows.size() == f.max_exponent();
    Monomial prod;
    for (const auto& g : dec.rows) {
      if (g.exps.empty() || g.max_exponent() > 1) ok = false;  // rows squarefree, nonempty
      for (const auto& [v, e] : g.exps) prod.set(v, prod.exponent(v) + e);
    }
    for (size_t i = 0; i + 1 < dec.rows.size(); ++i)
      if (!dec.rows[i + 1].divides(dec.rows[i])) ok = false;
    if (!(prod == f)) ok = false;
    if (!ok) {
      ++bad;
      c.require(false, tag + ": row invariants violated");
    }
  }

  // gapless monomials by construction: nested supports that only repeat a
  // level when it is a union of whole orbits (plus possibly y_1)
  const unsigned long pvals[] = {3, 5, 7, 11, 13};
  bad = 0;
  for (int iter = 0; iter < 10000 && bad < 5; ++iter) {
    unsigned long p = pvals[rng() % 5];
    std::vector<unsigned long> divs;
    for (unsigned long n = 1; n <= p - 1; ++n)
      if ((p - 1) % n == 0) divs.push_back(n);
    unsigned long n = divs[rng() % divs.size()];
    VariableSet vs(p, n);

    unsigned long h = 1 + rng() % 5;
    std::vector<std::vector<char>> level(h, std::vector<char>(p + 1, 0));
    // deepest level: a random nonempty subset
    for (size_t v = 1; v <= p; ++v) level[h - 1][v] = char(rng() % 2);
    if (std::count(level[h - 1].begin(), level[h - 1].end(), 1) == 0)
      level[h - 1][1 + rng() % p] = 1;
    for (size_t i = h - 1; i-- > 0;) {
      level[i] = level[i + 1];
      bool closed = true;
      for (const auto& orbit : vs.orbits()) {
        size_t in = 0;
        for (size_t v : orbit) in += level[i][v] ? 1 : 0;
        if (in != 0 && in != orbit.size()) closed = false;
      }
      std::vector<size_t> absent;
      for (size_t v = 1; v <= p; ++v)
        if (!level[i][v]) absent.push_back(v);
      bool grow = (!closed || (rng() % 2)) && !absent.empty();
      if (grow) {
        std::shuffle(absent.begin(), absent.end(), rng);
        size_t add = 1 + rng() % std::min<size_t>(3, absent.size());
        for (size_t j = 0; j < add; ++j) level[i][absent[j]] = 1;
      }
    }
    Monomial f;
    for (size_t v = 1; v <= p; ++v) {
      unsigned long e = 0;
      for (size_t i = 0; i < h; ++i) e += level[i][v] ? 1 : 0;
      if (e) f.set(v, e);
    }
    std::string tag = "p=" + std::to_string(p) + " n=" + std::to_string(n) +
                      " f=" + f.to_string();
    if (!is_gapless_image(f, vs)) {
      ++bad;
      c.require(false, tag + ": generator produced a non-gapless monomial");
      continue;
    }
    if (!check_below_n(f, vs)) {
      ++bad;
      c.require(false, tag + ": gapless monomial fails the degree-drop check");
    }
  }
}

// ------------------------------------------------------------------ 5

void c5_psl2_13(Criterion& c) {
  Engine eng;
  auto d = parse_descriptor("lie(A,1,13)");
  auto cands = eng.derive_candidates(d, "beta_upper");
  CertPtr psl, table;
  for (const auto& cand : cands) {
    if (cand->rule == "psl2_p") psl = cand;
    if (cand->rule == "lie_3940") table = cand;
  }
  c.require(psl != nullptr, "no psl2_p candidate");
  c.require(table != nullptr, "no lie_3940 candidate");
  if (!psl || !table) return;

  auto [plo, phi] = psl->value.interval(192);
  c.require(plo >= 912 && phi <= 914,
            "psl2_p encloses in [" + psl->value.decimal_lo(8) + ", " +
                psl->value.decimal_hi(8) + "], expected within [912, 914]");

  BoundValue threshold = BoundValue::power(1092, mpq_class(39, 40));
  auto [tlo, thi] = threshold.interval(192);
  c.require(tlo >= 916 && thi <= 917,
            "1092^(39/40) encloses in [" + threshold.decimal_lo(8) + ", " +
                threshold.decimal_hi(8) + "], expected within [916, 917]");
  auto [qlo, qhi] = table->value.interval(192);
  c.require(qlo >= 916 && qhi <= 917, "lie_3940 candidate not within [916, 917]");

  c.require(BoundValue::cmp(psl->value, threshold) < 0,
            "psl2_p bound not certified below 1092^(39/40)");
  c.require(BoundValue::cmp(psl->value, table->value) < 0,
            "psl2_p bound not below the lie_3940 candidate");
  checks(*psl, c, "psl2_p");
  checks(*table, c, "lie_3940");
}

// ------------------------------------------------------------------ 6

void c6_table1(Criterion& c) {
  auto rep = table1_check(192);
  c.require(rep.total == 23, "expected 23 tabulated figures, got " + std::to_string(rep.total));
  c.require(rep.matched == 22, "expected 22 reproduced, got " + std::to_string(rep.matched));
  c.require(rep.anomalies.size() == 1 && rep.anomalies[0] == "2D@4,3",
            "expected exactly the known outlier 2D@4,3");
}

// ------------------------------------------------------------------ 7

void c7_one_over_forty(Criterion& c) {
  auto t0 = std::chrono::steady_clock::now();
  Engine eng;
  std::vector<std::string> subjects;
  for (const auto& s : sporadic_table()) subjects.push_back("sporadic(" + s.name + ")");
  for (unsigned long q : {13, 17, 19, 23, 8, 27, 25})
    subjects.push_back("lie(A,1," + std::to_string(q) + ")");

  std::set<std::string> families;
  for (const auto& e : table1_check(128).entries)
    if (families.insert(e.family).second) {
      // the table lists 2F4 at the rank of F4; descriptors use the Ree rank
      unsigned long m = e.family == "2F4" ? 2 : e.m;
      subjects.push_back("lie(" + e.family + "," + std::to_string(m) + "," + e.q.get_str() +
                         ")");
    }
  c.require(families.size() == 16,
            "expected 16 families, got " + std::to_string(families.size()));

  for (const auto& s : subjects) {
    try {
      auto d = parse_descriptor(s);
      auto cert = eng.derive(d, "n_lower");
      BoundValue target = BoundValue::power(d->order(), mpq_class(1, 40));
      c.require(BoundValue::cmp(cert->value, target) >= 0,
                s + ": derived n >= " + cert->value.decimal_lo(8) + " is below |S|^(1/40) = " +
                    target.decimal_hi(8));
      checks(*cert, c, s);
    } catch (const std::exception& e) {
      c.require(false, s + ": " + e.what());
    }
  }
  double dt = seconds_since(t0);
  c.require(dt < 60.0, "took " + std::to_string(dt) + "s, target is one minute");
}

// ------------------------------------------------------------------ 8

void c8_onan_composition(Criterion& c) {
  Engine eng;
  auto inner = parse_descriptor("ext(cyclic(2); elem_abelian(2,4))");
  auto best = eng.derive(inner, "beta_upper");
  c.require(best->rule == "mul_normal", "extension bound found via " + best->rule);
  c.require(BoundValue::cmp(best->value, BoundValue::exact_int(10)) == 0,
            "extension bound is " + best->value.decimal_hi(6) + ", expected 10");

  bool coarse_seen = false;
  for (const auto& cand : eng.derive_candidates(inner, "beta_upper"))
    if (cand->rule == "three_quarters") {
      coarse_seen = true;
      c.require(BoundValue::cmp(cand->value, BoundValue::exact_int(24)) == 0,
                "three_quarters candidate is " + cand->value.decimal_hi(6) + ", expected 24");
    }
  c.require(coarse_seen, "no three_quarters candidate to contrast against");

  auto on = parse_descriptor("sporadic(ON)");
  mpz_class order = on->order();
  auto cert = eng.derive(on, "beta_upper");
  c.require(cert->value.is_exact() &&
                BoundValue::cmp(cert->value, BoundValue::exact_int(16000538400)) == 0,
            "derived bound is " + cert->value.decimal_hi(12) + ", expected 16000538400");
  checks(*cert, c, "sporadic(ON)");

  mpz_class index = order / 2592;
  c.require(index * 90 == 16000538400, "index * 90 sanity failed");

  BoundValue target = BoundValue::power_product(
      1, {{mpz_class(2), mpq_class(-1, 10)}, {order, mpq_class(9, 10)}});
  c.require(BoundValue::cmp(cert->value, target) < 0,
            "derived bound does not beat 2^(-1/10) |G|^(9/10)");
  mpz_class naive = index * 9 * 24;
  c.require(naive == 38401292160, "naive product sanity failed");
  c.require(BoundValue::cmp(BoundValue::exact_int(naive), target) > 0,
            "the naive 24-based bound unexpectedly beats the target too");
}

// ------------------------------------------------------------------ 9

void c9_alternating(Criterion& c) {
  Engine eng;
  for (unsigned k = 5; k <= 17; ++k) {
    mpz_class fact = 1;
    for (unsigned j = 2; j <= k; ++j) fact *= j;
    mpz_class order = fact / 2;
    std::string s = "alt(" + std::to_string(k) + ")";
    auto cands = eng.derive_candidates(parse_descriptor(s), "n_lower");
    bool found = false;
    for (const auto& cand : cands) {
      if (cand->premises.empty() || cand->premises[0]->rule != "small_nonsolvable") continue;
      found = true;
      BoundValue target = BoundValue::power(order, mpq_class(1, 40));
      c.require(BoundValue::cmp(cand->value, target) == 0,
                s + ": value " + cand->value.decimal_lo(8) + " != |A_k|^(1/40)");
      checks(*cand, c, s);
      break;
    }
    c.require(found, s + ": no candidate built on small_nonsolvable");
  }

  auto best = eng.derive(parse_descriptor("alt(12)"), "n_lower");
  c.require(best->value.is_exact() &&
                BoundValue::cmp(best->value, BoundValue::exact(mpq_class(64, 7))) == 0,
            "best n-bound for alt(12) is " + best->value.decimal_lo(8) + ", expected 64/7");
  checks(*best, c, "alt(12)");
}

// ------------------------------------------------------------------ 10

void c10_abelian_sweep(Criterion& c) {
  // search only where completion is plausible: the order caps turn hopeless
  // searches into instant budget refusals, closed forms are unaffected
  EngineOptions opts;
  opts.budget.max_nodes = 600'000;
  opts.budget.max_order = 40;
  Engine eng(opts);
  SearchBudget oracle_budget;
  oracle_budget.max_nodes = 3'500'000;
  oracle_budget.max_order = 48;

  // all invariant-factor chains with product <= 200
  std::vector<std::vector<unsigned long>> chains;
  std::vector<unsigned long> chain;
  std::function<void(unsigned long)> rec = [&](unsigned long prod) {
    chains.push_back(chain);
    if (chain.empty()) {
      for (unsigned long d = 2; d <= 200; ++d) {
        chain.push_back(d);
        rec(d);
        chain.pop_back();
      }
    } else {
      unsigned long last = chain.back();
      for (unsigned long d = last; prod * d <= 200; d += last) {
        chain.push_back(d);
        rec(prod * d);
        chain.pop_back();
      }
    }
  };
  rec(1);
  c.require(chains.size() > 250, "suspiciously few groups enumerated");

  size_t skips = 0, with_oracle = 0;
  std::vector<CertPtr> pool;
  for (const auto& ch : chains) {
    std::vector<mpz_class> fs(ch.begin(), ch.end());
    FiniteAbelianGroup G(fs);
    std::string desc;
    if (ch.empty()) {
      desc = "cyclic(1)";
    } else if (ch.size() == 1) {
      desc = "cyclic(" + std::to_string(ch[0]) + ")";
    } else {
      desc = "abelian(";
      for (size_t i = 0; i < ch.size(); ++i) desc += (i ? "," : "") + std::to_string(ch[i]);
      desc += ")";
    }

    mpz_class dstar = davenport_lower(G);
    mpz_class cap = davenport_capacity(G);
    std::optional<mpz_class> exact;
    unsigned long n = ch.empty() ? 1 : [&] {
      unsigned long prod = 1;
      for (auto d : ch) prod *= d;
      return prod;
    }();
    bool prime_power = [&] {
      if (n < 2) return false;
      unsigned long m = n;
      unsigned long p = 2;
      while (p * p <= m && m % p) ++p;
      if (p * p > m) p = m;
      while (m % p == 0) m /= p;
      return m == 1;
    }();
    if (ch.size() == 0) {
      exact = 1;
    } else if (ch.size() == 1) {
      exact = ch[0];
    } else if (ch.size() == 2) {
      exact = mpz_class(ch[0]) + ch[1] - 1;  // rank-two formula
    } else if (prime_power) {
      exact = dstar;  // p-group closed form
    } else {
      try {
        auto r = davenport_constant(G, oracle_budget);
        c.require(r.witness.length() == r.value - 1 && is_zero_sum_free(r.witness),
                  desc + ": searched witness invalid");
        exact = r.value;
      } catch (const BudgetError&) {
        ++skips;
      }
    }
    if (exact) {
      ++with_oracle;
      c.require(dstar <= *exact && *exact <= cap, desc + ": oracle outside [lower, capacity]");
    }

    try {
      auto d = parse_descriptor(desc);
      for (const char* goal : {"beta_upper", "beta_lower"}) {
        auto cands = eng.derive_candidates(d, goal);
        c.require(!cands.empty(), desc + ": no " + goal + " candidates");
        bool upper = std::string(goal) == "beta_upper";
        for (const auto& cand : cands) {
          mpz_class ref = exact ? *exact : (upper ? dstar : cap);
          int cmp = BoundValue::cmp(cand->value, BoundValue::exact_int(ref));
          if (upper)
            c.require(cmp >= 0, desc + ": " + cand->rule + " upper " +
                                    cand->value.decimal_hi(6) + " below " + ref.get_str());
          else
            c.require(cmp <= 0, desc + ": " + cand->rule + " lower " +
                                    cand->value.decimal_lo(6) + " above " + ref.get_str());
          checks(*cand, c, desc + " (" + cand->rule + ")", opts);
          pool.push_back(cand);
        }
      }
    } catch (const std::exception& e) {
      c.require(false, desc + ": " + e.what());
    }
  }
  c.require(skips <= 45, "too many groups without an exact reference: " + std::to_string(skips));
  c.require(with_oracle >= 250, "exact reference known for only " + std::to_string(with_oracle));

  // tampering: a tightened claim must be rejected by the checker
  std::vector<size_t> idx;
  for (size_t i = 0; i < pool.size(); ++i)
    if (pool[i]->value.is_exact()) idx.push_back(i);
  c.require(idx.size() >= 100, "not enough exact-valued certificates to tamper with");
  std::mt19937_64 rng(977);
  std::shuffle(idx.begin(), idx.end(), rng);
  int rejected = 0;
  for (size_t i = 0; i < 100 && i < idx.size(); ++i) {
    Certificate t = *pool[idx[i]];
    mpq_class delta = (t.goal == "beta_upper") ? -1 : 1;
    t.value = t.value.add(BoundValue::exact(delta));
    std::string why;
    if (!check_certificate(t, &why, opts)) ++rejected;
  }
  c.require(rejected == 100, "only " + std::to_string(rejected) + "/100 tampered rejected");
}

// ------------------------------------------------------------------ 11

void c11_index_certificates(Criterion& c) {
  Engine eng;

  auto solv = parse_descriptor("opaque(order=4, solvable=true, max_elem_order=2)");
  auto rs = eng.certify_cyclic_index(solv);
  c.require(rs.main->goal == "index_upper", "solvable: goal is " + rs.main->goal);
  c.require(rs.main->rule == "cyclic_index_solvable", "solvable: rule is " + rs.main->rule);
  c.require(has_param(*rs.main, "exponent", "10"), "solvable: exponent parameter not 10");
  c.require(BoundValue::cmp(rs.main->value, BoundValue::exact_int(1024)) == 0,
            "solvable: index bound is " + rs.main->value.decimal_hi(6) + ", expected 2^10");
  c.require(rs.corollary == nullptr, "solvable: unexpected corollary");
  checks(*rs.main, c, "solvable index");

  auto gen = parse_descriptor("lie(A,1,13)");
  auto rg = eng.certify_cyclic_index(gen);
  c.require(rg.main->rule == "cyclic_index_general", "general: rule is " + rg.main->rule);
  c.require(has_param(*rg.main, "k", "1024"), "general: k parameter not 1024");
  c.require(has_param(*rg.main, "exponent", "100"), "general: exponent parameter not 100");
  c.require(BoundValue::cmp(rg.main->value, BoundValue::power(1092, 100)) == 0,
            "general: index bound != 1092^100");
  checks(*rg.main, c, "general index");

  c.require(rg.corollary != nullptr && rg.corollary != rg.main, "general: corollary missing");
  if (rg.corollary) {
    c.require(rg.corollary->value.form() == BoundValue::Form::Enclosure,
              "corollary value is not an enclosure");
    c.require(BoundValue::cmp(rg.main->value, rg.corollary->value) < 0,
              "main bound not below the corollary bound");
    checks(*rg.corollary, c, "corollary index");
  }
}

}  // namespace

int main() {
  struct Entry {
    int num;
    const char* what;
    void (*fn)(Criterion&);
  };
  const Entry entries[] = {
      {1, "Davenport constants of elementary abelian groups equal k(p-1)+1 in closed form "
          "for all orders up to 256", c1_elem_abelian_closed_form},
      {2, "Davenport constant of every cyclic group Z_n equals n for n = 1..24",
       c2_cyclic_exact},
      {3, "10000 random prime-cyclic instances always yield a zero-sum subsequence of length "
          "at most h", c3_short_zero_sum},
      {4, "10000 random row decompositions keep their invariants and 10000 gapless monomials "
          "pass the degree-drop check", c4_row_decomposition},
      {5, "PSL(2,13): derived bound encloses within [912,914] and is certified below "
          "1092^(39/40) in [916,917]", c5_psl2_13},
      {6, "tabulated simple-group quality figures: 22 of 23 reproduced, the single known "
          "outlier flagged", c6_table1},
      {7, "n(S) >= |S|^(1/40) certified for all sporadic groups, PSL(2,q) samples, and one "
          "member per Lie family", c7_one_over_forty},
      {8, "O'Nan: composed extension bound 16000538400 beats the 0.9-power target where the "
          "naive 24-based bound fails", c8_onan_composition},
      {9, "alternating groups A_5..A_17 certified at the 1/40 exponent; A_12 reaches exact "
          "n >= 64/7", c9_alternating},
      {10, "abelian sweep to order 200: derived bounds bracket the exact Davenport constant "
           "and tampered certificates are rejected", c10_abelian_sweep},
      {11, "cyclic-subgroup index: exponent 10 when solvable, exponent 100 at k = 2^10, "
           "corollary enclosed soundly", c11_index_certificates},
  };

  int failed = 0;
  for (const auto& e : entries) {
    Criterion c;
    auto t0 = std::chrono::steady_clock::now();
    try {
      e.fn(c);
    } catch (const std::exception& ex) {
      c.require(false, std::string("unexpected exception: ") + ex.what());
    }
    std::printf("[%s] criterion %d: %s (%.1fs)\n", c.ok ? "PASS" : "FAIL", e.num, e.what,
                seconds_since(t0));
    if (!c.ok) {
      ++failed;
      std::fputs(c.notes.str().c_str(), stdout);
    }
    std::fflush(stdout);
  }
  return failed;
}
