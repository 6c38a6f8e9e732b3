#pragma once

#include <cstdint>

#include "noetherbound/abelian.hpp"

namespace noether {

struct SearchBudget {
  unsigned long max_order = 4096;  // dense-search order cap
  uint64_t max_nodes = 5'000'000;  // DFS state-visit cap, roughly a minute
  size_t memo_cap = 8'000'000;     // max memoized reachable-sum states
};

struct DavenportResult {
  mpz_class value;    // D(G)
  ZSequence witness;  // zero-sum-free sequence of length value - 1
  bool closed_form;   // true when lower bound and capacity coincided (no search)
  uint64_t nodes = 0;
  uint64_t memo_states = 0;
};

// sum of all elements is the identity; empty sequences are rejected
bool is_zero_sum(const ZSequence& S);

// no nonempty subsequence sums to zero, decided by reachable-subset-sum
// bitsets over the group
bool is_zero_sum_free(const ZSequence& S);

// 1 + sum(d_i - 1): length bound from the canonical zero-sum-free witness
mpz_class davenport_lower(const FiniteAbelianGroup& G);

// A proved upper bound for D(G):
//   p-groups: D <= 1 + sum(p^e_i - 1), because in F_p[G] the augmentation
//     ideal I satisfies I^N = 0 for N = 1 + sum(p^e_i - 1), while a zero-sum-
//     free sequence (g_1..g_L) gives prod(g_j - 1) in I^L with identity
//     coefficient +-1 (only the empty subsequence sums to zero), so L < N.
//   general: D(G) <= prod over Sylow subgroups via D(G) <= D(H) D(G/H),
//   capped by |G|.
// Coincides with davenport_lower exactly for p-groups and cyclic groups.
mpz_class davenport_capacity(const FiniteAbelianGroup& G);

// Exact D(G) = 1 + length of the longest zero-sum-free sequence, with a
// witness. Closed form when lower == capacity (any order); otherwise a
// memoized DFS over reachable-subset-sum states within the budget.
// Throws BudgetError (with the partial lower bound) when exceeded.
DavenportResult davenport_constant(const FiniteAbelianGroup& G, const SearchBudget& budget = {});

// beta of an abelian group equals its Davenport constant
DavenportResult beta_abelian(const FiniteAbelianGroup& G, const SearchBudget& budget = {});

// Shortest nonempty zero-sum subsequence of S over a cyclic group of prime
// order, restricted to length <= h; ties broken by the lexicographically
// smallest sorted value tuple. Preconditions: |S| >= p and every
// multiplicity <= h (then a witness always exists); violations raise
// std::invalid_argument, and absence of a witness under valid preconditions
// is a std::logic_error.
ZSequence find_short_zero_sum(const ZSequence& S, const mpz_class& h);

}  // namespace noether
