#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "noetherbound/certificate.hpp"
#include "noetherbound/zerosum.hpp"

namespace noether {

struct EngineError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EngineOptions {
  SearchBudget budget;           // for the Davenport delegation
  unsigned precision_bits = 192;
  unsigned cmp_cap_bits = 1024;
};

// Rule-based derivation of certified bounds. Goals: exact, beta_upper,
// beta_lower, n_lower, n_upper. The n-goals divide the group order by the
// best beta bound in the opposite direction; they are never independent.
class Engine {
 public:
  explicit Engine(EngineOptions opts = {}) : opts_(std::move(opts)) {}

  // best certificate: minimal upper bounds, maximal lower bounds;
  // deterministic tie-break (value form, then rule id, then serialization)
  CertPtr derive(const DescPtr& d, const std::string& goal);

  // every applicable rule's certificate for the goal, best first;
  // derive() returns the front
  std::vector<CertPtr> derive_candidates(const DescPtr& d, const std::string& goal);

  struct IndexResult {
    CertPtr main;       // goal index_upper
    CertPtr corollary;  // nonsolvable subjects: exponent 100 + 10 log2 log2 n
  };
  // bound on the index of a characteristic cyclic subgroup, in terms of an
  // upper estimate n = |G| / (derived beta lower bound) >= n(G):
  // solvable -> n^10; otherwise n^(10 log2 k) with
  // k = max(2^10, largest alternating composition factor degree)
  IndexResult certify_cyclic_index(const DescPtr& d);

  const EngineOptions& options() const { return opts_; }

 private:
  EngineOptions opts_;
  std::map<std::pair<std::string, std::string>, CertPtr> memo_;
  std::map<std::pair<std::string, std::string>, std::vector<CertPtr>> cand_memo_;
  std::set<std::pair<std::string, std::string>> active_;  // recursion guard
};

// Independent replay of a certificate DAG: re-checks every node's side
// conditions, premise shapes, and rule formula with directed rounding.
// Returns false and describes the first failing node in *why.
bool check_certificate(const Certificate& c, std::string* why = nullptr,
                       const EngineOptions& opts = {});

}  // namespace noether
