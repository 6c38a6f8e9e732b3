#include "noetherbound/atlas.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <stdexcept>

namespace noether::data {
extern const char* lie_orders_tsv;
extern const char* sporadic_tsv;
extern const char* table1_tsv;
}  // namespace noether::data

namespace noether {

namespace {

std::vector<std::vector<std::string>> parse_tsv(const char* text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {  // column names, for human readers only
      header_seen = true;
      continue;
    }
    std::vector<std::string> cells;
    size_t start = 0;
    while (true) {
      size_t tab = line.find('\t', start);
      cells.push_back(line.substr(start, tab == std::string::npos ? tab : tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    rows.push_back(std::move(cells));
  }
  return rows;
}

// --- tiny arithmetic expression evaluator over rationals -------------------
//
// grammar: sum of products of powers; primaries are integers, the rank
// variable m, the range variable i, parenthesized sums, floor(x), bin(n,k).
// '/' is exact rational division; '^' requires a nonnegative integer
// exponent; floor/bin require integral arguments where integrality matters.

struct ExprEnv {
  mpq_class m;
  std::optional<mpq_class> i;
};

class ExprParser {
 public:
  ExprParser(const std::string& s, const ExprEnv& env) : s_(s), env_(env) {}

  mpq_class run() {
    mpq_class v = sum();
    ws();
    if (i_ < s_.size()) fail("trailing input in expression");
    return v;
  }

 private:
  const std::string& s_;
  const ExprEnv& env_;
  size_t i_ = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw std::invalid_argument(msg + " in '" + s_ + "'");
  }

  void ws() {
    while (i_ < s_.size() && std::isspace((unsigned char)s_[i_])) ++i_;
  }

  bool eat(char c) {
    ws();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }

  mpq_class sum() {
    mpq_class v = product();
    while (true) {
      if (eat('+'))
        v += product();
      else if (eat('-'))
        v -= product();
      else
        return v;
    }
  }

  mpq_class product() {
    mpq_class v = power();
    while (true) {
      if (eat('*')) {
        v *= power();
      } else if (eat('/')) {
        mpq_class d = power();
        if (d == 0) fail("division by zero");
        v /= d;
      } else {
        return v;
      }
    }
  }

  mpq_class power() {
    mpq_class base = primary();
    if (!eat('^')) return base;
    mpq_class e = power();  // right associative
    if (e.get_den() != 1 || e < 0) fail("exponent must be a nonnegative integer");
    if (!e.get_num().fits_ulong_p()) fail("exponent too large");
    return pow_q(base, (long)e.get_num().get_ui());
  }

  mpq_class primary() {
    ws();
    if (eat('(')) {
      mpq_class v = sum();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (i_ < s_.size() && std::isdigit((unsigned char)s_[i_])) {
      size_t start = i_;
      while (i_ < s_.size() && std::isdigit((unsigned char)s_[i_])) ++i_;
      return mpq_class(mpz_class(s_.substr(start, i_ - start)));
    }
    size_t start = i_;
    while (i_ < s_.size() && std::isalpha((unsigned char)s_[i_])) ++i_;
    std::string word = s_.substr(start, i_ - start);
    if (word == "m") return env_.m;
    if (word == "i") {
      if (!env_.i) fail("range variable i outside a ranged term");
      return *env_.i;
    }
    if (word == "floor") {
      if (!eat('(')) fail("expected '(' after floor");
      mpq_class v = sum();
      if (!eat(')')) fail("expected ')'");
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), v.get_num().get_mpz_t(), v.get_den().get_mpz_t());
      return mpq_class(q);
    }
    if (word == "bin") {
      if (!eat('(')) fail("expected '(' after bin");
      mpq_class n = sum();
      if (!eat(',')) fail("expected ','");
      mpq_class k = sum();
      if (!eat(')')) fail("expected ')'");
      if (n.get_den() != 1 || k.get_den() != 1 || k < 0) fail("bin needs integers, k >= 0");
      if (!k.get_num().fits_ulong_p()) fail("bin: k too large");
      return mpq_class(binomial_z(n.get_num(), k.get_num().get_ui()));
    }
    fail("expected a value");
  }
};

mpq_class eval_expr(const std::string& s, const ExprEnv& env) {
  return ExprParser(s, env).run();
}

mpz_class eval_int(const std::string& s, const ExprEnv& env) {
  mpq_class v = eval_expr(s, env);
  if (v.get_den() != 1)
    throw std::invalid_argument("expression '" + s + "' is not an integer here");
  return v.get_num();
}

unsigned long eval_ulong(const std::string& s, const ExprEnv& env) {
  mpz_class v = eval_int(s, env);
  if (v < 0 || !v.fits_ulong_p())
    throw std::invalid_argument("expression '" + s + "' out of range");
  return v.get_ui();
}

// --- Lie order table --------------------------------------------------------

struct OrderTerm {
  bool divide = false;
  bool ranged = false;
  std::string lo, hi;  // ranged only
  std::string expr;
  char sign = '-';
};

struct OrderRow {
  std::string qpow;
  std::vector<OrderTerm> terms;
  std::string divisor;
};

OrderTerm parse_order_term(const std::string& text) {
  OrderTerm t;
  std::vector<std::string> chunks;
  size_t start = 0;
  while (true) {
    size_t c = text.find(':', start);
    chunks.push_back(text.substr(start, c == std::string::npos ? c : c - start));
    if (c == std::string::npos) break;
    start = c + 1;
  }
  size_t k = 0;
  if (chunks.size() == 3) {
    t.ranged = true;
    const std::string& r = chunks[0];
    if (r.rfind("i=", 0) != 0) throw std::invalid_argument("bad range in term " + text);
    size_t dots = r.find("..");
    if (dots == std::string::npos) throw std::invalid_argument("bad range in term " + text);
    t.lo = r.substr(2, dots - 2);
    t.hi = r.substr(dots + 2);
    k = 1;
  } else if (chunks.size() != 2) {
    throw std::invalid_argument("bad factor term " + text);
  }
  t.expr = chunks[k];
  if (!t.expr.empty() && t.expr[0] == '/') {
    t.divide = true;
    t.expr = t.expr.substr(1);
  }
  if (chunks[k + 1].size() != 1) throw std::invalid_argument("bad sign in term " + text);
  t.sign = chunks[k + 1][0];
  if (t.sign != '-' && t.sign != '+' && t.sign != '~')
    throw std::invalid_argument("bad sign in term " + text);
  return t;
}

const std::map<std::string, OrderRow>& order_table() {
  static const std::map<std::string, OrderRow> table = [] {
    std::map<std::string, OrderRow> t;
    for (const auto& row : parse_tsv(data::lie_orders_tsv)) {
      if (row.size() != 4) throw std::logic_error("order table: bad row");
      OrderRow r;
      r.qpow = row[1];
      std::istringstream terms(row[2]);
      std::string term;
      while (std::getline(terms, term, ';')) r.terms.push_back(parse_order_term(term));
      r.divisor = row[3];
      t.emplace(row[0], std::move(r));
    }
    return t;
  }();
  return table;
}

// q^e - 1, q^e + 1, or q^e - (-1)^e according to the sign tag
mpz_class cyclotomic_factor(const mpz_class& q, unsigned long e, char sign) {
  mpz_class v = pow_z(q, e);
  switch (sign) {
    case '-':
      return v - 1;
    case '+':
      return v + 1;
    default:
      return e % 2 == 0 ? mpz_class(v - 1) : mpz_class(v + 1);
  }
}

mpz_class eval_divisor(const std::string& text, const ExprEnv& env, const mpz_class& q) {
  if (text == "1") return 1;
  if (text.rfind("gcd(", 0) != 0 || text.back() != ')')
    throw std::invalid_argument("bad divisor " + text);
  std::string inner = text.substr(4, text.size() - 5);
  size_t comma = inner.find(',');
  if (comma == std::string::npos) throw std::invalid_argument("bad divisor " + text);
  mpz_class a = eval_int(inner.substr(0, comma), env);
  std::string rest = inner.substr(comma + 1);
  if (rest.empty() || rest[0] != 'q') throw std::invalid_argument("bad divisor " + text);
  size_t pos = 1;
  unsigned long e = 1;
  if (pos < rest.size() && rest[pos] == '^') {
    size_t sign_at = rest.find_first_of("+-", pos + 1);
    if (sign_at == std::string::npos) throw std::invalid_argument("bad divisor " + text);
    e = eval_ulong(rest.substr(pos + 1, sign_at - pos - 1), env);
    pos = sign_at;
  }
  if (pos >= rest.size() || (rest[pos] != '+' && rest[pos] != '-') ||
      rest.substr(pos + 1) != "1")
    throw std::invalid_argument("bad divisor " + text);
  return gcd_z(a, cyclotomic_factor(q, e, rest[pos]));
}

// --- elementary abelian subgroup table --------------------------------------

struct EOption {
  std::string expr;
  bool plus_one = false;  // isogeny-dependent extra central p; reported, never relied on
};

struct PrintedValue {
  std::string value;
  unsigned long m = 0;
  mpz_class q;
};

struct SubgroupRow {
  std::string bound_exp;
  std::vector<EOption> eopts;
  std::vector<PrintedValue> printed;
};

const std::map<std::string, SubgroupRow>& subgroup_table() {
  static const std::map<std::string, SubgroupRow> table = [] {
    std::map<std::string, SubgroupRow> t;
    for (const auto& row : parse_tsv(data::table1_tsv)) {
      if (row.size() != 4) throw std::logic_error("subgroup table: bad row");
      SubgroupRow r;
      r.bound_exp = row[1];
      std::istringstream opts(row[2]);
      std::string opt;
      while (std::getline(opts, opt, '|')) {
        EOption e;
        if (opt.size() >= 4 && opt.substr(opt.size() - 4) == "(+1)") {
          e.plus_one = true;
          opt = opt.substr(0, opt.size() - 4);
        }
        e.expr = opt;
        r.eopts.push_back(std::move(e));
      }
      std::istringstream vals(row[3]);
      std::string val;
      while (std::getline(vals, val, ';')) {
        size_t at = val.find('@');
        size_t comma = val.find(',', at);
        if (at == std::string::npos || comma == std::string::npos)
          throw std::logic_error("subgroup table: bad value " + val);
        PrintedValue pv;
        pv.value = val.substr(0, at);
        pv.m = std::stoul(val.substr(at + 1, comma - at - 1));
        pv.q = mpz_class(val.substr(comma + 1));
        r.printed.push_back(std::move(pv));
      }
      t.emplace(row[0], std::move(r));
    }
    return t;
  }();
  return table;
}

const SubgroupRow& subgroup_row(const std::string& family) {
  const auto& t = subgroup_table();
  auto it = t.find(family);
  if (it == t.end()) throw std::invalid_argument("unknown family " + family);
  return it->second;
}

// --- quality figure [lo, hi] and decimal matching ----------------------------

// encloses ln(p^N / (N(p-1)+1)) / (bf * ln p)
std::pair<mpq_class, mpq_class> quality_interval(const mpz_class& p, unsigned long N,
                                                 unsigned long bf, mpfr_prec_t prec) {
  mpz_class K = mpz_class(N) * (p - 1) + 1;
  mpfr_t lnp_d, lnp_u, lnK_d, lnK_u, num_d, num_u, den_d, den_u, v;
  mpfr_inits2(prec, lnp_d, lnp_u, lnK_d, lnK_u, num_d, num_u, den_d, den_u, v, (mpfr_ptr)0);
  mpfr_set_z(lnp_d, p.get_mpz_t(), MPFR_RNDD);
  mpfr_log(lnp_d, lnp_d, MPFR_RNDD);
  mpfr_set_z(lnp_u, p.get_mpz_t(), MPFR_RNDU);
  mpfr_log(lnp_u, lnp_u, MPFR_RNDU);
  mpfr_set_z(lnK_d, K.get_mpz_t(), MPFR_RNDD);
  mpfr_log(lnK_d, lnK_d, MPFR_RNDD);
  mpfr_set_z(lnK_u, K.get_mpz_t(), MPFR_RNDU);
  mpfr_log(lnK_u, lnK_u, MPFR_RNDU);
  // numerator N*lnp - lnK; positive whenever p^N > K (every tabulated case)
  mpfr_mul_ui(num_d, lnp_d, N, MPFR_RNDD);
  mpfr_sub(num_d, num_d, lnK_u, MPFR_RNDD);
  mpfr_mul_ui(num_u, lnp_u, N, MPFR_RNDU);
  mpfr_sub(num_u, num_u, lnK_d, MPFR_RNDU);
  mpfr_mul_ui(den_d, lnp_d, bf, MPFR_RNDD);
  mpfr_mul_ui(den_u, lnp_u, bf, MPFR_RNDU);
  mpq_class lo, hi;
  mpfr_div(v, num_d, den_u, MPFR_RNDD);
  mpfr_get_q(lo.get_mpq_t(), v);
  mpfr_div(v, num_u, den_d, MPFR_RNDU);
  mpfr_get_q(hi.get_mpq_t(), v);
  mpfr_clears(lnp_d, lnp_u, lnK_d, lnK_u, num_d, num_u, den_d, den_u, v, (mpfr_ptr)0);
  return {lo, hi};
}

// x >= 0 rendered with exactly d digits after the point
std::string decimal_fixed(const mpq_class& x, unsigned d, bool round) {
  mpq_class scaled = x * mpq_class(pow_z(10, d));
  if (round) scaled += mpq_class(1, 2);
  mpz_class t;
  mpz_fdiv_q(t.get_mpz_t(), scaled.get_num().get_mpz_t(), scaled.get_den().get_mpz_t());
  mpz_class ip = t / pow_z(10, d), fp = t % pow_z(10, d);
  std::string frac = fp.get_str();
  frac.insert(0, d - frac.size(), '0');
  return ip.get_str() + "." + frac;
}

}  // namespace

mpz_class lie_order(const std::string& family, unsigned long m, const mpz_class& q) {
  const auto& t = order_table();
  auto it = t.find(family);
  if (it == t.end()) throw std::invalid_argument("unknown family " + family);
  const OrderRow& row = it->second;
  ExprEnv env{mpq_class(m), std::nullopt};
  mpz_class order = pow_z(q, eval_ulong(row.qpow, env));
  for (const auto& term : row.terms) {
    long lo = 0, hi = 0;
    if (term.ranged) {
      lo = (long)eval_ulong(term.lo, env);
      hi = (long)eval_ulong(term.hi, env);
    }
    for (long i = term.ranged ? lo : 0; !term.ranged || i <= hi; ++i) {
      ExprEnv tenv{mpq_class(m), term.ranged ? std::optional<mpq_class>(mpq_class(i))
                                             : std::nullopt};
      mpz_class f = cyclotomic_factor(q, eval_ulong(term.expr, tenv), term.sign);
      if (term.divide) {
        if (order % f != 0) throw std::logic_error("order table: non-exact division");
        order /= f;
      } else {
        order *= f;
      }
      if (!term.ranged) break;
    }
  }
  mpz_class d = eval_divisor(row.divisor, env, q);
  if (order % d != 0) throw std::logic_error("order table: non-exact divisor");
  return order / d;
}

const std::vector<SporadicDatum>& sporadic_table() {
  static const std::vector<SporadicDatum> table = [] {
    std::vector<SporadicDatum> t;
    for (const auto& row : parse_tsv(data::sporadic_tsv)) {
      if (row.size() != 5) throw std::logic_error("sporadic table: bad row");
      SporadicDatum d;
      d.name = row[0];
      d.order = mpz_class(row[1]);
      if (row[2] != "none") {
        Fact f;
        f.sub = parse_descriptor(row[3]);
        mpz_class sub_order = f.sub->order();
        if (d.order % sub_order != 0)
          throw std::logic_error("sporadic table: " + d.name + " fact order mismatch");
        if (row[2] == "section") {
          f.type = Fact::Type::Section;
        } else if (row[2] == "subgroup") {
          f.type = Fact::Type::Subgroup;
          f.index = d.order / sub_order;
        } else {
          throw std::logic_error("sporadic table: bad fact kind " + row[2]);
        }
        d.fact = std::move(f);
      }
      if (row[4] != "-") d.note = row[4];
      t.push_back(std::move(d));
    }
    return t;
  }();
  return table;
}

const SporadicDatum& sporadic_datum(const std::string& name) {
  for (const auto& d : sporadic_table())
    if (d.name == name) return d;
  throw std::invalid_argument("unknown sporadic group " + name);
}

unsigned long lie_safe_exponent(const std::string& family, unsigned long m) {
  const SubgroupRow& row = subgroup_row(family);
  ExprEnv env{mpq_class(m), std::nullopt};
  std::optional<unsigned long> best;
  for (const auto& opt : row.eopts) {
    unsigned long e = eval_ulong(opt.expr, env);
    if (e < 1) throw std::logic_error("subgroup table: exponent < 1");
    if (!best || e < *best) best = e;
  }
  return *best;
}

unsigned long lie_bound_exponent(const std::string& family, unsigned long m) {
  return eval_ulong(subgroup_row(family).bound_exp, ExprEnv{mpq_class(m), std::nullopt});
}

Table1Report table1_check(unsigned precision_bits) {
  Table1Report report;
  for (const auto& [family, row] : subgroup_table()) {
    for (const auto& pv : row.printed) {
      Table1Entry entry;
      entry.family = family;
      entry.m = pv.m;
      entry.q = pv.q;
      entry.printed = pv.value;

      PrimePower pp = split_prime_power(pv.q);
      ExprEnv env{mpq_class(pv.m), std::nullopt};
      unsigned long b = eval_ulong(row.bound_exp, env);
      unsigned long bf = b * pp.f;
      size_t dot = pv.value.find('.');
      unsigned digits = dot == std::string::npos ? 0 : (unsigned)(pv.value.size() - dot - 1);

      for (const auto& opt : row.eopts) {
        unsigned long e = eval_ulong(opt.expr, env);
        std::vector<std::pair<unsigned long, std::string>> variants;
        variants.emplace_back(e * pp.f, "e=" + std::to_string(e));
        if (opt.plus_one)
          variants.emplace_back(e * pp.f + 1, "e=" + std::to_string(e) + " plus one");
        for (const auto& [N, label] : variants) {
          auto [lo, hi] = quality_interval(pp.p, N, bf, (mpfr_prec_t)precision_bits);
          entry.computed.push_back(label + ": " + decimal_fixed(lo, 5, true));
          if (entry.matched) continue;
          for (bool rounded : {false, true}) {
            std::string slo = decimal_fixed(lo, digits, rounded);
            std::string shi = decimal_fixed(hi, digits, rounded);
            if (slo == shi && slo == pv.value) {
              entry.matched = true;
              entry.matched_via =
                  label + " (N=" + std::to_string(N) + (rounded ? "), rounded" : "), truncated");
              break;
            }
          }
        }
      }

      ++report.total;
      if (entry.matched) {
        ++report.matched;
      } else {
        std::ostringstream key;
        key << family << "@" << pv.m << "," << pv.q;
        report.anomalies.push_back(key.str());
      }
      report.entries.push_back(std::move(entry));
    }
  }
  return report;
}

}  // namespace noether
