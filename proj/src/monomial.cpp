#include "noetherbound/monomial.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace noether {

void Monomial::set(size_t var, unsigned long e) {
  if (var == 0) throw std::invalid_argument("monomial variables are 1-indexed");
  if (e == 0)
    exps.erase(var);
  else
    exps[var] = e;
}

unsigned long Monomial::exponent(size_t var) const {
  auto it = exps.find(var);
  return it == exps.end() ? 0 : it->second;
}

unsigned long Monomial::degree() const {
  unsigned long d = 0;
  for (const auto& [v, e] : exps) d += e;
  return d;
}

unsigned long Monomial::max_exponent() const {
  unsigned long m = 0;
  for (const auto& [v, e] : exps) m = std::max(m, e);
  return m;
}

bool Monomial::divides(const Monomial& f) const {
  for (const auto& [v, e] : exps)
    if (f.exponent(v) < e) return false;
  return true;
}

std::string Monomial::to_string(char letter) const {
  if (exps.empty()) return "1";
  std::ostringstream out;
  bool first = true;
  for (const auto& [v, e] : exps) {
    if (!first) out << ' ';
    first = false;
    out << letter << v;
    if (e > 1) out << '^' << e;
  }
  return out.str();
}

Monomial parse_monomial(const std::string& text, char letter) {
  Monomial m;
  size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && (std::isspace((unsigned char)text[i]) || text[i] == '*')) ++i;
  };
  auto number = [&](const char* what) -> unsigned long {
    if (i >= text.size() || !std::isdigit((unsigned char)text[i]))
      throw std::invalid_argument(std::string("monomial: expected ") + what +
                                  " at position " + std::to_string(i));
    unsigned long v = 0;
    while (i < text.size() && std::isdigit((unsigned char)text[i])) {
      v = v * 10 + (text[i] - '0');
      if (v > 1'000'000'000) throw std::invalid_argument("monomial: number too large");
      ++i;
    }
    return v;
  };
  skip();
  if (i < text.size() && text[i] == '1' && i + 1 == text.size()) return m;  // the unit
  while (i < text.size()) {
    if (text[i] != letter)
      throw std::invalid_argument(std::string("monomial: expected variable '") + letter +
                                  "' at position " + std::to_string(i));
    ++i;
    unsigned long var = number("variable index");
    if (var == 0) throw std::invalid_argument("monomial: variable indices start at 1");
    unsigned long e = 1;
    if (i < text.size() && text[i] == '^') {
      ++i;
      e = number("exponent");
      if (e == 0) throw std::invalid_argument("monomial: zero exponent");
    }
    m.set(var, m.exponent(var) + e);
    skip();
  }
  return m;
}

RowDecomposition row_decomposition(const Monomial& f) {
  if (f.degree() == 0) throw std::invalid_argument("row_decomposition: empty monomial");
  RowDecomposition rd;
  unsigned long h = f.max_exponent();
  rd.rows.resize(h);
  for (const auto& [v, e] : f.exps)
    for (unsigned long k = 0; k < e; ++k) rd.rows[k].set(v, 1);
  return rd;
}

VariableSet::VariableSet(unsigned long p, unsigned long n)
    : VariableSet(p, n, {}, {}) {}

VariableSet::VariableSet(unsigned long p, unsigned long n, std::vector<unsigned long> weights,
                         std::vector<std::vector<size_t>> orbits)
    : p_(p), n_(n) {
  if (!is_prime_ul(p)) throw std::invalid_argument("VariableSet: p must be prime");
  if (n == 0 || (p - 1) % n != 0)
    throw std::invalid_argument("VariableSet: n must divide p-1");
  if (weights.empty()) {
    weights.resize(p);
    for (unsigned long i = 0; i < p; ++i) weights[i] = i;
  }
  if (weights.size() != p || weights[0] != 0)
    throw std::invalid_argument("VariableSet: need p weights with weight(y_1) = 0");
  var_of_weight_.assign(p, 0);
  for (size_t i = 0; i < p; ++i) {
    if (weights[i] >= p || var_of_weight_[weights[i]] != 0)
      throw std::invalid_argument("VariableSet: weights must be distinct mod p");
    var_of_weight_[weights[i]] = i + 1;
  }
  weights_ = std::move(weights);
  if (orbits.empty()) {
    for (size_t start = 2; start <= p; start += n) {
      std::vector<size_t> orb;
      for (size_t v = start; v < start + n; ++v) orb.push_back(v);
      orbits.push_back(std::move(orb));
    }
  }
  std::vector<bool> seen(p + 1, false);
  seen[1] = true;
  for (auto& orb : orbits) {
    if (orb.size() != n) throw std::invalid_argument("VariableSet: orbit of wrong size");
    for (size_t v : orb) {
      if (v < 2 || v > p || seen[v])
        throw std::invalid_argument("VariableSet: orbits must partition y_2..y_p");
      seen[v] = true;
    }
  }
  for (size_t v = 2; v <= p; ++v)
    if (!seen[v]) throw std::invalid_argument("VariableSet: orbits must cover y_2..y_p");
  orbits_ = std::move(orbits);
}

unsigned long VariableSet::weight(size_t var) const {
  if (var < 1 || var > p_) throw std::out_of_range("VariableSet: variable index");
  return weights_[var - 1];
}

size_t VariableSet::var_with_weight(unsigned long w) const {
  if (w >= p_) throw std::out_of_range("VariableSet: weight");
  return var_of_weight_[w];
}

WeightedModule::WeightedModule(FiniteAbelianGroup g, std::vector<GroupElement> w,
                               std::optional<std::vector<size_t>> t)
    : group(std::move(g)), weights(std::move(w)), transfer(std::move(t)) {
  if (weights.empty()) throw std::invalid_argument("WeightedModule: need at least one weight");
  for (const auto& e : weights) validate_element(group, e);
  if (transfer && transfer->size() != weights.size())
    throw std::invalid_argument("WeightedModule: transfer size mismatch");
}

Monomial weight_transfer(const Monomial& m, const WeightedModule& wm, const VariableSet& vs) {
  if (wm.group.rank() != 1 || wm.group.order() != vs.p())
    throw std::invalid_argument("weight_transfer: module group must be Z_p for the p of the variable set");
  Monomial fy;
  for (const auto& [x, e] : m.exps) {
    if (x > wm.weights.size())
      throw std::invalid_argument("weight_transfer: monomial variable outside the module");
    unsigned long w = wm.weights[x - 1].coords[0].get_ui();
    size_t y = wm.transfer ? (*wm.transfer)[x - 1] : vs.var_with_weight(w);
    if (y < 1 || y > vs.p() || vs.weight(y) != w)
      throw std::invalid_argument("weight_transfer: transfer map does not preserve weights");
    fy.set(y, fy.exponent(y) + e);
  }
  return fy;
}

namespace {

void validate_y_monomial(const Monomial& f, const VariableSet& vs, const char* who) {
  for (const auto& [v, e] : f.exps)
    if (v < 1 || v > vs.p())
      throw std::invalid_argument(std::string(who) + ": variable outside y_1..y_p");
}

// does some orbit meet g without being contained in it
bool partially_involved(const Monomial& g, const VariableSet& vs) {
  for (const auto& orb : vs.orbits()) {
    size_t hit = 0;
    for (size_t v : orb) hit += g.exponent(v) > 0;
    if (hit > 0 && hit < orb.size()) return true;
  }
  return false;
}

}  // namespace

bool is_gapless_image(const Monomial& f_y, const VariableSet& vs) {
  validate_y_monomial(f_y, vs, "is_gapless_image");
  if (f_y.degree() == 0) return true;
  auto rd = row_decomposition(f_y);
  for (size_t i = 0; i + 1 < rd.rows.size(); ++i)
    if (partially_involved(rd.rows[i], vs) &&
        rd.rows[i + 1].degree() >= rd.rows[i].degree())
      return false;
  return true;
}

bool is_gapless(const Monomial& m, const WeightedModule& wm, const VariableSet& vs) {
  return is_gapless_image(weight_transfer(m, wm, vs), vs);
}

bool check_below_n(const Monomial& f_y, const VariableSet& vs) {
  validate_y_monomial(f_y, vs, "check_below_n");
  if (f_y.degree() == 0) return true;
  auto rd = row_decomposition(f_y);
  for (size_t i = 0; i + 1 < rd.rows.size(); ++i)
    if (rd.rows[i].exponent(1) == 0 && rd.rows[i].degree() < vs.n() &&
        rd.rows[i + 1].degree() >= rd.rows[i].degree())
      return false;
  return true;
}

Monomial invariant_submonomial(const Monomial& f, unsigned long h, const VariableSet& vs) {
  validate_y_monomial(f, vs, "invariant_submonomial");
  if (f.degree() < vs.p())
    throw std::invalid_argument("invariant_submonomial: need deg(f) >= p");
  if (f.max_exponent() > h)
    throw std::invalid_argument("invariant_submonomial: exponents must be <= h");
  auto G = FiniteAbelianGroup::cyclic(vs.p());
  ZSequence S(G);
  for (const auto& [v, e] : f.exps) {
    GroupElement g;
    g.coords = {mpz_class(vs.weight(v))};
    S.push(g, e);
  }
  ZSequence T = find_short_zero_sum(S, h);
  Monomial sub;
  for (const auto& [g, c] : T.entries())
    sub.set(vs.var_with_weight(g.coords[0].get_ui()), c.get_ui());
  return sub;
}

namespace {

// dense helpers over a small group for the atom search
struct AtomSpace {
  const FiniteAbelianGroup& G;
  unsigned long n;
  size_t words;
  std::vector<uint32_t> neg;
  std::vector<std::vector<uint32_t>> trans;  // per weight: x -> x + w_j

  AtomSpace(const FiniteAbelianGroup& g, const std::vector<GroupElement>& ws)
      : G(g), n(g.order_ul()), words((g.order_ul() + 63) / 64) {
    neg.resize(n);
    for (unsigned long x = 0; x < n; ++x) {
      GroupElement e = element_at(G, x);
      for (size_t i = 0; i < e.coords.size(); ++i)
        if (e.coords[i] != 0) e.coords[i] = G.invariant_factors()[i] - e.coords[i];
      neg[x] = element_index(G, e);
    }
    trans.reserve(ws.size());
    for (const auto& w : ws) {
      std::vector<uint32_t> row(n);
      for (unsigned long x = 0; x < n; ++x)
        row[x] = element_index(G, add(G, element_at(G, x), w));
      trans.push_back(std::move(row));
    }
  }

  static bool test(const std::vector<uint64_t>& b, uint32_t i) {
    return (b[i >> 6] >> (i & 63)) & 1;
  }
  static void set(std::vector<uint64_t>& b, uint32_t i) { b[i >> 6] |= uint64_t(1) << (i & 63); }

  void translate(const std::vector<uint64_t>& src, size_t j, std::vector<uint64_t>& dst) const {
    std::fill(dst.begin(), dst.end(), 0);
    const auto& row = trans[j];
    for (size_t w = 0; w < words; ++w) {
      uint64_t bits = src[w];
      while (bits) {
        uint32_t x = uint32_t(w * 64) + __builtin_ctzll(bits);
        bits &= bits - 1;
        set(dst, row[x]);
      }
    }
  }

  // R union (w_j + R), in place
  void expand(std::vector<uint64_t>& R, size_t j, std::vector<uint64_t>& scratch) const {
    translate(R, j, scratch);
    for (size_t w = 0; w < words; ++w) R[w] |= scratch[w];
  }
};

struct AtomSearch {
  AtomSpace sp;
  std::vector<uint32_t> wi;  // dense index of each weight
  size_t l;
  unsigned long cap;
  uint64_t max_nodes;
  uint64_t nodes = 0;
  // reach[j][r]: sums realizable with exactly r copies from slots j..l-1
  std::vector<std::vector<std::vector<uint64_t>>> reach;
  std::vector<unsigned long> a;
  std::vector<std::vector<unsigned long>> atoms;

  AtomSearch(const FiniteAbelianGroup& G, const std::vector<GroupElement>& ws,
             unsigned long cap_, uint64_t max_nodes_)
      : sp(G, ws), l(ws.size()), cap(cap_), max_nodes(max_nodes_), a(ws.size(), 0) {
    for (const auto& w : ws) wi.push_back(element_index(G, w));
    reach.assign(l + 1, std::vector<std::vector<uint64_t>>(cap + 1,
                                                           std::vector<uint64_t>(sp.words, 0)));
    AtomSpace::set(reach[l][0], 0);
    // selections with >= 1 copy of slot j are one copy on top of an
    // (r-1)-selection, so reach[j][r] = reach[j+1][r] | (w_j + reach[j][r-1])
    std::vector<uint64_t> tmp(sp.words);
    for (size_t j = l; j-- > 0;) {
      for (unsigned long r = 0; r <= cap; ++r) {
        auto& dst = reach[j][r];
        dst = reach[j + 1][r];
        if (r > 0) {
          sp.translate(reach[j][r - 1], j, tmp);
          for (size_t w = 0; w < sp.words; ++w) dst[w] |= tmp[w];
        }
      }
    }
  }

  // is the multiset minus one copy of value v zero-sum-free
  bool minus_one_is_zsf(uint32_t skip_value) const {
    std::vector<uint64_t> R(sp.words, 0), scratch(sp.words);
    AtomSpace::set(R, 0);
    bool skipped = false;
    for (size_t j = 0; j < l; ++j) {
      unsigned long t = a[j];
      if (!skipped && t > 0 && wi[j] == skip_value) {
        --t;
        skipped = true;
      }
      for (unsigned long k = 0; k < t; ++k) {
        if (AtomSpace::test(R, sp.neg[wi[j]])) return false;
        sp.expand(R, j, scratch);
      }
    }
    return true;
  }

  void candidate() {
    // minimal iff removal of any single element leaves it zero-sum-free
    std::vector<uint32_t> values;
    for (size_t j = 0; j < l; ++j)
      if (a[j] > 0) values.push_back(wi[j]);
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    for (uint32_t v : values)
      if (!minus_one_is_zsf(v)) return;
    atoms.push_back(a);
  }

  void dfs(size_t j, unsigned long r, uint32_t sum, std::vector<uint64_t> R) {
    if (++nodes > max_nodes) throw BudgetError("atoms: node budget exceeded");
    if (!AtomSpace::test(reach[j][r], sp.neg[sum])) return;
    if (j == l) {
      if (r == 0 && sum == 0) candidate();
      return;
    }
    dfs(j + 1, r, sum, R);
    std::vector<uint64_t> scratch(sp.words);
    for (unsigned long t = 1; t <= r; ++t) {
      if (AtomSpace::test(R, sp.neg[wi[j]])) {
        // this copy closes a zero sum; only acceptable as the very last element
        if (t == r && sp.trans[j][sum] == 0) {
          a[j] = t;
          candidate();
          a[j] = 0;
        }
        break;
      }
      sum = sp.trans[j][sum];
      sp.expand(R, j, scratch);
      if (t == r) break;  // no zero sum formed, so the full vector cannot close
      a[j] = t;
      dfs(j + 1, r - t, sum, R);
    }
    a[j] = 0;
  }
};

}  // namespace

AtomsResult atoms_and_beta(const WeightedModule& wm, const SearchBudget& budget,
                           std::optional<unsigned long> degree_cap) {
  const auto& G = wm.group;
  if (!G.small(budget.max_order))
    throw BudgetError("atoms: group order exceeds the search budget");
  AtomsResult res;
  unsigned long cap;
  if (degree_cap) {
    cap = *degree_cap;
    res.truncated = true;
  } else {
    cap = davenport_constant(G, budget).value.get_ui();
  }
  res.degree_cap = cap;

  AtomSearch search(G, wm.weights, cap, budget.max_nodes);
  for (unsigned long d = 1; d <= cap; ++d) {
    std::vector<uint64_t> R0(search.sp.words, 0);
    AtomSpace::set(R0, 0);
    search.dfs(0, d, 0, std::move(R0));
  }
  res.atoms = std::move(search.atoms);
  res.beta = 0;
  for (const auto& atom : res.atoms) {
    unsigned long d = 0;
    for (auto e : atom) d += e;
    if (res.beta < d) res.beta = d;
  }
  return res;
}

}  // namespace noether
