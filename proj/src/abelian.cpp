#include "noetherbound/abelian.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace noether {

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<mpz_class> invariant_factors)
    : d_(std::move(invariant_factors)) {
  for (size_t i = 0; i < d_.size(); ++i) {
    if (d_[i] < 2) throw std::invalid_argument("invariant factor below 2");
    if (i + 1 < d_.size() && d_[i + 1] % d_[i] != 0)
      throw std::invalid_argument("invariant factors must form a divisibility chain");
    order_ *= d_[i];
  }
}

FiniteAbelianGroup FiniteAbelianGroup::cyclic(const mpz_class& n) {
  if (n < 1) throw std::invalid_argument("cyclic group order must be >= 1");
  if (n == 1) return FiniteAbelianGroup();
  return FiniteAbelianGroup({n});
}

FiniteAbelianGroup FiniteAbelianGroup::elem_abelian(unsigned long p, unsigned k) {
  if (!is_prime_ul(p)) throw std::invalid_argument("elem_abelian: p must be prime");
  return FiniteAbelianGroup(std::vector<mpz_class>(k, mpz_class(p)));
}

FiniteAbelianGroup FiniteAbelianGroup::from_cyclic_factors(const std::vector<mpz_class>& ns) {
  // primary decomposition, then reassemble invariant factors largest-first
  std::map<unsigned long, std::vector<unsigned>> primary;  // p -> exponents, descending
  for (const auto& n : ns) {
    if (n < 1) throw std::invalid_argument("cyclic factor must be >= 1");
    if (n == 1) continue;
    if (!n.fits_ulong_p())
      throw std::invalid_argument("cyclic factor too large to normalize");
    for (auto [p, e] : factorize(n.get_ui())) primary[p].push_back(e);
  }
  size_t rank = 0;
  for (auto& [p, es] : primary) {
    std::sort(es.begin(), es.end(), std::greater<>());
    rank = std::max(rank, es.size());
  }
  std::vector<mpz_class> inv(rank, 1);
  for (auto& [p, es] : primary)
    for (size_t i = 0; i < es.size(); ++i) inv[i] *= pow_z(p, es[i]);
  std::reverse(inv.begin(), inv.end());  // ascending divisibility chain
  return FiniteAbelianGroup(std::move(inv));
}

bool FiniteAbelianGroup::small(unsigned long max_order) const {
  return order_.fits_ulong_p() && order_.get_ui() <= max_order;
}

unsigned long FiniteAbelianGroup::order_ul() const {
  if (!order_.fits_ulong_p()) throw std::overflow_error("group order exceeds machine word");
  return order_.get_ui();
}

std::string FiniteAbelianGroup::to_string() const {
  if (d_.empty()) return "1";
  std::ostringstream os;
  for (size_t i = 0; i < d_.size(); ++i) {
    if (i) os << " x ";
    os << "Z" << d_[i];
  }
  return os.str();
}

void validate_element(const FiniteAbelianGroup& G, const GroupElement& g) {
  if (g.coords.size() != G.rank())
    throw std::invalid_argument("element rank does not match group");
  for (size_t i = 0; i < g.coords.size(); ++i)
    if (g.coords[i] < 0 || g.coords[i] >= G.invariant_factors()[i])
      throw std::invalid_argument("element coordinate out of range");
}

GroupElement add(const FiniteAbelianGroup& G, const GroupElement& a, const GroupElement& b) {
  validate_element(G, a);
  validate_element(G, b);
  GroupElement r;
  r.coords.resize(G.rank());
  for (size_t i = 0; i < G.rank(); ++i) {
    r.coords[i] = a.coords[i] + b.coords[i];
    if (r.coords[i] >= G.invariant_factors()[i]) r.coords[i] -= G.invariant_factors()[i];
  }
  return r;
}

GroupElement zero_element(const FiniteAbelianGroup& G) {
  GroupElement r;
  r.coords.assign(G.rank(), 0);
  return r;
}

bool is_zero(const GroupElement& g) {
  for (const auto& c : g.coords)
    if (c != 0) return false;
  return true;
}

mpz_class element_order(const FiniteAbelianGroup& G, const GroupElement& g) {
  validate_element(G, g);
  mpz_class t = 1;
  for (size_t i = 0; i < G.rank(); ++i) {
    const mpz_class& d = G.invariant_factors()[i];
    t = lcm_z(t, d / gcd_z(g.coords[i], d));
  }
  return t;
}

unsigned long element_index(const FiniteAbelianGroup& G, const GroupElement& g) {
  validate_element(G, g);
  unsigned long idx = 0;
  for (size_t i = 0; i < G.rank(); ++i)
    idx = idx * G.invariant_factors()[i].get_ui() + g.coords[i].get_ui();
  return idx;
}

GroupElement element_at(const FiniteAbelianGroup& G, unsigned long index) {
  GroupElement g;
  g.coords.resize(G.rank());
  for (size_t i = G.rank(); i-- > 0;) {
    unsigned long d = G.invariant_factors()[i].get_ui();
    g.coords[i] = index % d;
    index /= d;
  }
  return g;
}

std::string GroupElement::to_string() const {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < coords.size(); ++i) {
    if (i) os << ",";
    os << coords[i];
  }
  os << ")";
  return os.str();
}

ZSequence::ZSequence(FiniteAbelianGroup G, const std::vector<GroupElement>& elems)
    : group_(std::move(G)) {
  for (const auto& e : elems) push(e);
}

void ZSequence::push(const GroupElement& g, const mpz_class& count) {
  validate_element(group_, g);
  if (count < 1) throw std::invalid_argument("multiplicity must be >= 1");
  auto it = std::lower_bound(entries_.begin(), entries_.end(), g,
                             [](const auto& e, const GroupElement& v) { return e.first < v; });
  if (it != entries_.end() && it->first == g)
    it->second += count;
  else
    entries_.insert(it, {g, count});
}

mpz_class ZSequence::length() const {
  mpz_class n = 0;
  for (const auto& [e, c] : entries_) n += c;
  return n;
}

mpz_class ZSequence::max_multiplicity() const {
  mpz_class m = 0;
  for (const auto& [e, c] : entries_) m = std::max(m, c);
  return m;
}

std::vector<GroupElement> ZSequence::to_elements() const {
  std::vector<GroupElement> out;
  for (const auto& [e, c] : entries_) {
    if (!c.fits_ulong_p()) throw std::overflow_error("sequence too long to expand");
    for (unsigned long i = 0; i < c.get_ui(); ++i) out.push_back(e);
  }
  return out;
}

bool ZSequence::operator==(const ZSequence& o) const {
  return group_ == o.group_ && entries_ == o.entries_;
}

std::string ZSequence::to_string() const {
  std::ostringstream os;
  os << "[";
  bool first = true;
  for (const auto& [e, c] : entries_) {
    if (!first) os << ", ";
    first = false;
    os << e.to_string();
    if (c != 1) os << "^" << c;
  }
  os << "]";
  return os.str();
}

}  // namespace noether
