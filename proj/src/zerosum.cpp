#include "noetherbound/zerosum.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>
#include <vector>

namespace noether {

namespace {

using Bits = std::vector<uint64_t>;

struct BitsHash {
  size_t operator()(const Bits& b) const {
    uint64_t h = 1469598103934665603ull;
    for (uint64_t w : b) {
      h ^= w;
      h *= 1099511628211ull;
    }
    return static_cast<size_t>(h);
  }
};

inline bool test_bit(const Bits& b, uint32_t i) { return (b[i >> 6] >> (i & 63)) & 1; }
inline void set_bit(Bits& b, uint32_t i) { b[i >> 6] |= uint64_t(1) << (i & 63); }

inline uint32_t popcount(const Bits& b) {
  uint32_t c = 0;
  for (uint64_t w : b) c += __builtin_popcountll(w);
  return c;
}

// Dense arithmetic over a small group: element indices, negation table, and
// addition rows (full table when it fits, lazily built rows otherwise).
struct DenseGroup {
  const FiniteAbelianGroup& G;
  uint32_t n;
  size_t words;
  std::vector<uint32_t> radices;
  std::vector<uint32_t> neg;
  std::vector<uint32_t> add_table;               // n*n when n <= kFullTableCap
  std::vector<std::vector<uint32_t>> lazy_rows;  // otherwise, built per summand

  static constexpr uint32_t kFullTableCap = 2048;

  explicit DenseGroup(const FiniteAbelianGroup& g) : G(g), n(g.order_ul()) {
    words = (n + 63) / 64;
    for (const auto& d : G.invariant_factors()) radices.push_back(d.get_ui());
    neg.resize(n);
    for (uint32_t x = 0; x < n; ++x) neg[x] = negate_index(x);
    if (n <= kFullTableCap) {
      add_table.resize(size_t(n) * n);
      for (uint32_t g0 = 0; g0 < n; ++g0) fill_row(g0, &add_table[size_t(g0) * n]);
    } else {
      lazy_rows.resize(n);
    }
  }

  uint32_t negate_index(uint32_t x) const {
    std::vector<uint32_t> cs = decompose(x);
    for (size_t i = 0; i < radices.size(); ++i)
      if (cs[i] != 0) cs[i] = radices[i] - cs[i];
    return compose(cs);
  }

  void fill_row(uint32_t g0, uint32_t* row) const {
    std::vector<uint32_t> gc = decompose(g0);
    std::vector<uint32_t> xc(radices.size(), 0);
    for (uint32_t x = 0; x < n; ++x) {
      uint32_t idx = 0;
      for (size_t i = 0; i < radices.size(); ++i) {
        uint32_t s = xc[i] + gc[i];
        if (s >= radices[i]) s -= radices[i];
        idx = idx * radices[i] + s;
      }
      row[x] = idx;
      // increment mixed-radix counter xc
      for (size_t i = radices.size(); i-- > 0;) {
        if (++xc[i] < radices[i]) break;
        xc[i] = 0;
      }
    }
  }

  std::vector<uint32_t> decompose(uint32_t x) const {
    std::vector<uint32_t> cs(radices.size());
    for (size_t i = radices.size(); i-- > 0;) {
      cs[i] = x % radices[i];
      x /= radices[i];
    }
    return cs;
  }

  uint32_t compose(const std::vector<uint32_t>& cs) const {
    uint32_t idx = 0;
    for (size_t i = 0; i < radices.size(); ++i) idx = idx * radices[i] + cs[i];
    return idx;
  }

  const uint32_t* row(uint32_t g0) {
    if (!add_table.empty()) return &add_table[size_t(g0) * n];
    auto& r = lazy_rows[g0];
    if (r.empty()) {
      r.resize(n);
      fill_row(g0, r.data());
    }
    return r.data();
  }

  // R2 = R union (g + R)
  void expand(const Bits& R, uint32_t g0, Bits& R2) {
    R2 = R;
    const uint32_t* rw = row(g0);
    for (size_t w = 0; w < words; ++w) {
      uint64_t bits = R[w];
      while (bits) {
        uint32_t x = uint32_t(w * 64) + __builtin_ctzll(bits);
        bits &= bits - 1;
        set_bit(R2, rw[x]);
      }
    }
  }

  // |R union (g + R)| without materializing it
  uint32_t expanded_popcount(const Bits& R, uint32_t g0, uint32_t pop) {
    const uint32_t* rw = row(g0);
    uint32_t extra = 0;
    for (size_t w = 0; w < words; ++w) {
      uint64_t bits = R[w];
      while (bits) {
        uint32_t x = uint32_t(w * 64) + __builtin_ctzll(bits);
        bits &= bits - 1;
        if (!test_bit(R, rw[x])) ++extra;
      }
    }
    return pop + extra;
  }
};

struct DavenportSearch {
  DenseGroup dg;
  const SearchBudget& budget;
  uint32_t cap;  // proved upper bound for D(G)
  uint64_t nodes = 0;
  std::unordered_map<Bits, int32_t, BitsHash> memo;
  bool done = false;                  // a sequence of length cap-1 was realized
  std::vector<uint32_t> path;         // current DFS move stack
  std::vector<uint32_t> done_path;    // witness captured when done fires
  int32_t deepest = 0;                // longest sequence realized so far

  DavenportSearch(const FiniteAbelianGroup& G, const SearchBudget& b, uint32_t cap_)
      : dg(G), budget(b), cap(cap_) {}

  // exact maximum number of elements addable from reachable-sum state R;
  // `depth` is the length of some sequence realizing R (used only to prune
  // against the capacity, which is sound for any realizing depth)
  int32_t extend(const Bits& R, int32_t depth) {
    if (auto it = memo.find(R); it != memo.end()) return it->second;
    deepest = std::max(deepest, depth);  // reaching depth d proves a length-d sequence
    if (++nodes > budget.max_nodes)
      throw BudgetError("davenport: node budget exceeded", 1 + deepest);
    if (depth >= int32_t(cap) - 1) {
      // capacity reached: nothing can extend this state further and the
      // global answer is pinned at the capacity
      done = true;
      done_path = path;
      return 0;
    }
    uint32_t pop = popcount(R);
    std::vector<std::pair<uint32_t, uint32_t>> kids;  // (popcount after move, g)
    kids.reserve(dg.n);
    for (uint32_t g = 1; g < dg.n; ++g) {
      if (test_bit(R, dg.neg[g])) continue;  // adding g would create a zero sum
      kids.emplace_back(dg.expanded_popcount(R, g, pop), g);
    }
    std::sort(kids.begin(), kids.end());
    int32_t best = 0;
    Bits R2(dg.words);
    for (auto [pop2, g] : kids) {
      // each move grows the state, so at most n - pop2 moves remain; the
      // capacity similarly bounds the remaining length
      int32_t ub = 1 + std::min<int32_t>(dg.n - pop2, cap - 2 - depth);
      if (ub <= best) continue;
      dg.expand(R, g, R2);
      path.push_back(g);
      int32_t v = 1 + extend(R2, depth + 1);
      path.pop_back();
      if (done) return best;  // unwinding; value unused
      best = std::max(best, v);
    }
    if (memo.size() < budget.memo_cap) memo.emplace(R, best);
    deepest = std::max(deepest, depth + best);
    return best;
  }
};

ZSequence witness_from_indices(const FiniteAbelianGroup& G, std::vector<uint32_t> idx) {
  std::sort(idx.begin(), idx.end());
  ZSequence w(G);
  for (uint32_t i : idx) w.push(element_at(G, i));
  return w;
}

ZSequence canonical_witness(const FiniteAbelianGroup& G) {
  // d_i - 1 copies of each standard generator; zero-sum-free because a
  // subset sums to sum(c_i e_i) with 0 <= c_i < d_i, zero only when empty
  ZSequence w(G);
  for (size_t i = 0; i < G.rank(); ++i) {
    GroupElement e = zero_element(G);
    e.coords[i] = 1;
    w.push(e, G.invariant_factors()[i] - 1);
  }
  return w;
}

}  // namespace

bool is_zero_sum(const ZSequence& S) {
  if (S.empty()) throw std::invalid_argument("is_zero_sum: empty sequence");
  const auto& G = S.group();
  GroupElement acc = zero_element(G);
  for (const auto& [e, c] : S.entries()) {
    GroupElement scaled;
    scaled.coords.resize(G.rank());
    for (size_t i = 0; i < G.rank(); ++i)
      scaled.coords[i] = (e.coords[i] * c) % G.invariant_factors()[i];
    acc = add(G, acc, scaled);
  }
  return is_zero(acc);
}

bool is_zero_sum_free(const ZSequence& S) {
  const auto& G = S.group();
  if (G.trivial()) {
    // only the zero element exists; any nonempty sequence has a zero sum
    return S.empty();
  }
  if (!G.small(1ul << 20)) throw std::overflow_error("group too large for subset-sum check");
  DenseGroup dg(G);
  Bits R(dg.words);
  set_bit(R, 0);
  Bits R2(dg.words);
  for (const auto& [e, c] : S.entries()) {
    mpz_class ord = element_order(G, e);
    if (c >= ord) return false;  // ord copies of e already sum to zero
    uint32_t g = element_index(G, e);
    for (mpz_class i = 0; i < c; ++i) {
      if (test_bit(R, dg.neg[g])) return false;
      dg.expand(R, g, R2);
      R.swap(R2);
    }
  }
  return true;
}

mpz_class davenport_lower(const FiniteAbelianGroup& G) {
  mpz_class r = 1;
  for (const auto& d : G.invariant_factors()) r += d - 1;
  return r;
}

mpz_class davenport_capacity(const FiniteAbelianGroup& G) {
  // per-prime capacity of the Sylow decomposition
  std::map<unsigned long, mpz_class> sylow_cap;  // p -> 1 + sum(p^e - 1)
  for (const auto& d : G.invariant_factors()) {
    if (!d.fits_ulong_p())
      throw std::overflow_error("invariant factor too large to factorize");
    for (auto [p, e] : factorize(d.get_ui())) {
      auto [it, fresh] = sylow_cap.try_emplace(p, 1);
      it->second += pow_z(p, e) - 1;
    }
  }
  mpz_class cap = 1;
  for (const auto& [p, c] : sylow_cap) cap *= c;
  return std::min(cap, G.order());
}

DavenportResult davenport_constant(const FiniteAbelianGroup& G, const SearchBudget& budget) {
  mpz_class lower = davenport_lower(G);
  mpz_class cap = davenport_capacity(G);
  if (lower == cap)
    return {cap, canonical_witness(G), /*closed_form=*/true, 0, 0};
  if (!G.small(budget.max_order))
    throw BudgetError("davenport: order exceeds search budget", lower);

  DavenportSearch s(G, budget, static_cast<uint32_t>(cap.get_ui()));
  Bits R0(s.dg.words);
  set_bit(R0, 0);
  int32_t ext;
  try {
    ext = s.extend(R0, 0);
  } catch (BudgetError& e) {
    e.partial_lower_bound = std::max(e.partial_lower_bound, lower);
    throw;
  }
  if (s.done)
    return {cap, witness_from_indices(G, s.done_path), false, s.nodes, s.memo.size()};

  // greedy reconstruction: repeatedly take the smallest element whose
  // successor state has exactly one fewer extension step
  std::vector<uint32_t> picks;
  Bits R = R0, R2(s.dg.words);
  int32_t remaining = ext;
  int32_t depth = 0;
  while (remaining > 0) {
    bool advanced = false;
    for (uint32_t g = 1; g < s.dg.n && !advanced; ++g) {
      if (test_bit(R, s.dg.neg[g])) continue;
      s.dg.expand(R, g, R2);
      if (s.extend(R2, depth + 1) == remaining - 1) {
        picks.push_back(g);
        R.swap(R2);
        --remaining;
        ++depth;
        advanced = true;
      }
    }
    if (!advanced) throw std::logic_error("davenport: witness reconstruction failed");
  }
  return {mpz_class(1 + ext), witness_from_indices(G, picks), false, s.nodes, s.memo.size()};
}

DavenportResult beta_abelian(const FiniteAbelianGroup& G, const SearchBudget& budget) {
  return davenport_constant(G, budget);
}

ZSequence find_short_zero_sum(const ZSequence& S, const mpz_class& h) {
  const auto& G = S.group();
  if (G.rank() != 1 || !is_prime(G.invariant_factors()[0]))
    throw std::invalid_argument("find_short_zero_sum: sequence must lie over a prime-order cyclic group");
  if (!G.small(1ul << 20))
    throw std::overflow_error("find_short_zero_sum: group too large");
  unsigned long p = G.order_ul();
  if (S.length() < p)
    throw std::invalid_argument("find_short_zero_sum: need |S| >= p");
  if (h < 1 || S.max_multiplicity() > h)
    throw std::invalid_argument("find_short_zero_sum: need max multiplicity <= h");
  if (!S.length().fits_ulong_p())
    throw std::overflow_error("find_short_zero_sum: sequence too long");

  std::vector<unsigned long> vals;
  for (const auto& [e, c] : S.entries())
    for (mpz_class i = 0; i < c; ++i) vals.push_back(e.coords[0].get_ui());
  std::sort(vals.begin(), vals.end());
  size_t n = vals.size();
  unsigned long hmax = std::min(h.fits_ulong_p() ? h.get_ui() : n, (unsigned long)n);

  size_t words = (p + 63) / 64;
  if ((n + 1) * (hmax + 1) * words > (size_t(1) << 26))
    throw std::overflow_error("find_short_zero_sum: DP table too large");

  // feas[j][l] = sums achievable with exactly l elements from positions j..n-1
  auto at = [&](size_t j, size_t l) -> size_t { return (j * (hmax + 1) + l) * words; };
  std::vector<uint64_t> feas((n + 1) * (hmax + 1) * words, 0);
  feas[at(n, 0)] |= 1;  // empty selection sums to zero
  auto rot_or = [&](const uint64_t* src, unsigned long shift, uint64_t* dst) {
    for (unsigned long s = 0; s < p; ++s)
      if ((src[s >> 6] >> (s & 63)) & 1) {
        unsigned long t = s + shift;
        if (t >= p) t -= p;
        dst[t >> 6] |= uint64_t(1) << (t & 63);
      }
  };
  for (size_t j = n; j-- > 0;) {
    for (size_t l = 0; l <= hmax; ++l) {
      uint64_t* dst = &feas[at(j, l)];
      const uint64_t* keep = &feas[at(j + 1, l)];
      for (size_t w = 0; w < words; ++w) dst[w] = keep[w];
      if (l > 0) rot_or(&feas[at(j + 1, l - 1)], vals[j], dst);
    }
  }

  size_t L = 0;
  for (size_t l = 1; l <= hmax; ++l)
    if (feas[at(0, l)] & 1) {
      L = l;
      break;
    }
  if (L == 0)
    throw std::logic_error(
        "find_short_zero_sum: no zero-sum subsequence of length <= h exists; "
        "this contradicts the short-zero-sum lemma for valid inputs");

  ZSequence T(G);
  unsigned long s = 0;
  size_t rem = L;
  for (size_t j = 0; j < n && rem > 0; ++j) {
    unsigned long need = (p - (s + vals[j]) % p) % p;
    const uint64_t* f = &feas[at(j + 1, rem - 1)];
    if ((f[need >> 6] >> (need & 63)) & 1) {
      GroupElement e;
      e.coords = {mpz_class(vals[j])};
      T.push(e);
      s = (s + vals[j]) % p;
      --rem;
    }
  }
  if (rem != 0) throw std::logic_error("find_short_zero_sum: reconstruction failed");
  return T;
}

}  // namespace noether
