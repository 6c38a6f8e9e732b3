#include "noetherbound/descriptor.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "noetherbound/atlas.hpp"

namespace noether {

namespace {

mpz_class factorial(unsigned long n) { return factorial_z(n); }

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

DescPtr freeze(Descriptor d) { return std::make_shared<const Descriptor>(std::move(d)); }

}  // namespace

PrimePower split_prime_power(const mpz_class& q) {
  require(q >= 2, "prime power must be >= 2");
  require(q.fits_ulong_p(), "prime power too large");
  auto fac = factorize(q.get_ui());
  require(fac.size() == 1, q.get_str() + " is not a prime power");
  return {mpz_class(fac[0].first), fac[0].second};
}

DescPtr make_trivial() {
  Descriptor d;
  d.kind = Kind::Trivial;
  return freeze(std::move(d));
}

DescPtr make_cyclic(const mpz_class& n) {
  require(n >= 1, "cyclic: order must be >= 1");
  Descriptor d;
  d.kind = Kind::Cyclic;
  d.n = n;
  return freeze(std::move(d));
}

DescPtr make_abelian(std::vector<mpz_class> ds) {
  require(!ds.empty(), "abelian: needs at least one invariant factor");
  for (size_t i = 0; i < ds.size(); ++i) {
    require(ds[i] >= 2, "abelian: invariant factors must be >= 2");
    if (i > 0)
      require(ds[i] % ds[i - 1] == 0, "abelian: invariant factor " + ds[i - 1].get_str() +
                                          " does not divide " + ds[i].get_str());
  }
  Descriptor d;
  d.kind = Kind::Abelian;
  d.ds = std::move(ds);
  return freeze(std::move(d));
}

DescPtr make_elem_abelian(unsigned long p, unsigned long k) {
  require(is_prime_ul(p), "elem_abelian: p must be prime");
  require(k >= 1, "elem_abelian: k must be >= 1");
  require(k <= 4096, "elem_abelian: rank too large");
  Descriptor d;
  d.kind = Kind::ElemAbelian;
  d.p = p;
  d.k = k;
  return freeze(std::move(d));
}

DescPtr make_dihedral(const mpz_class& order) {
  require(order % 2 == 0, "dihedral: order must be even");
  require(order >= 6, "dihedral: order must be >= 6 (smaller cases are abelian)");
  Descriptor d;
  d.kind = Kind::Dihedral;
  d.n = order;
  return freeze(std::move(d));
}

DescPtr make_frobenius(unsigned long p, unsigned long m) {
  require(is_prime_ul(p), "frobenius: p must be prime");
  require(m >= 2, "frobenius: complement order must be >= 2");
  require((p - 1) % m == 0,
          "frobenius: " + std::to_string(m) + " does not divide " + std::to_string(p - 1));
  Descriptor d;
  d.kind = Kind::Frobenius;
  d.p = p;
  d.m = m;
  return freeze(std::move(d));
}

DescPtr make_ext(DescPtr normal_part, DescPtr quotient_part) {
  require(normal_part && quotient_part, "ext: missing part");
  Descriptor d;
  d.kind = Kind::Ext;
  d.normal_part = std::move(normal_part);
  d.quotient_part = std::move(quotient_part);
  return freeze(std::move(d));
}

DescPtr make_product(std::vector<DescPtr> children) {
  require(children.size() >= 2, "product: needs at least two factors");
  for (const auto& c : children) require(c != nullptr, "product: missing factor");
  Descriptor d;
  d.kind = Kind::Product;
  d.children = std::move(children);
  return freeze(std::move(d));
}

DescPtr make_lie(const std::string& family, unsigned long m, const mpz_class& q) {
  PrimePower pp = split_prime_power(q);
  bool q_pow2_odd = pp.p == 2 && pp.f % 2 == 1 && pp.f >= 3;
  bool q_pow3_odd = pp.p == 3 && pp.f % 2 == 1 && pp.f >= 3;
  auto fixed_m = [&](unsigned long want) {
    require(m == want, "lie: family " + family + " requires m = " + std::to_string(want));
  };
  if (family == "A") {
    require(m >= 1, "lie: A needs m >= 1");
    require(m != 1 || q >= 4, "lie: A(1," + q.get_str() + ") is not simple");
  } else if (family == "2A") {
    require(m >= 2, "lie: 2A needs m >= 2");
    require(m != 2 || q != 2, "lie: 2A(2,2) is not simple");
  } else if (family == "B" || family == "C") {
    require(m >= 2, "lie: " + family + " needs m >= 2");
    require(m != 2 || q != 2, "lie: " + family + "(2,2) is not simple");
  } else if (family == "D" || family == "2D") {
    require(m >= 4, "lie: " + family + " needs m >= 4");
  } else if (family == "G2") {
    fixed_m(2);
    require(q != 2, "lie: G2(2) is not simple");
  } else if (family == "F4") {
    fixed_m(4);
  } else if (family == "E6" || family == "2E6") {
    fixed_m(6);
  } else if (family == "E7") {
    fixed_m(7);
  } else if (family == "E8") {
    fixed_m(8);
  } else if (family == "3D4") {
    fixed_m(4);
  } else if (family == "2B2") {
    fixed_m(2);
    require(q_pow2_odd, "lie: 2B2 needs q an odd power of 2, q >= 8");
  } else if (family == "2G2") {
    fixed_m(2);
    require(q_pow3_odd, "lie: 2G2 needs q an odd power of 3, q >= 27");
  } else if (family == "2F4") {
    fixed_m(2);
    require(q != 2, "lie: 2F4(2) is not simple; its derived subgroup is tits");
    require(q_pow2_odd, "lie: 2F4 needs q an odd power of 2, q >= 8");
  } else {
    throw std::invalid_argument("lie: unknown family " + family);
  }
  Descriptor d;
  d.kind = Kind::Lie;
  d.family = family;
  d.m = m;
  d.q = q;
  return freeze(std::move(d));
}

DescPtr make_alt(unsigned long k) {
  require(k >= 3, "alt: degree must be >= 3");
  require(k <= 100000, "alt: degree too large");
  Descriptor d;
  d.kind = Kind::Alt;
  d.k = k;
  return freeze(std::move(d));
}

DescPtr make_sporadic(const std::string& name) {
  if (name == "Tits") return make_tits();
  sporadic_datum(name);  // throws for unknown names
  Descriptor d;
  d.kind = Kind::Sporadic;
  d.name = name;
  return freeze(std::move(d));
}

DescPtr make_tits() {
  Descriptor d;
  d.kind = Kind::Tits;
  return freeze(std::move(d));
}

DescPtr make_opaque(OpaqueAttrs attrs) {
  require(attrs.order.has_value(), "opaque: order is required");
  require(*attrs.order >= 1, "opaque: order must be >= 1");
  if (attrs.max_elem_order) {
    require(*attrs.max_elem_order >= 1, "opaque: max_elem_order must be >= 1");
    require(*attrs.order % *attrs.max_elem_order == 0,
            "opaque: max_elem_order must divide the order");
  }
  if (attrs.char_cyclic) {
    require(*attrs.char_cyclic >= 1, "opaque: C must be >= 1");
    require(*attrs.order % *attrs.char_cyclic == 0, "opaque: C must divide the order");
  }
  for (const auto& f : attrs.facts) {
    switch (f.type) {
      case Fact::Type::Subgroup:
        require(f.index >= 1, "opaque: subgroup index must be >= 1");
        require(f.sub->order() * f.index == *attrs.order,
                "opaque: subgroup order times index must equal the order");
        break;
      case Fact::Type::Section:
        require(*attrs.order % f.sub->order() == 0,
                "opaque: section order must divide the order");
        break;
      case Fact::Type::Normal:
        require(f.sub->order() * f.quotient->order() == *attrs.order,
                "opaque: normal times quotient order must equal the order");
        break;
    }
  }
  Descriptor d;
  d.kind = Kind::Opaque;
  d.attrs = std::move(attrs);
  return freeze(std::move(d));
}

mpz_class Descriptor::order() const {
  switch (kind) {
    case Kind::Trivial:
      return 1;
    case Kind::Cyclic:
      return n;
    case Kind::Abelian: {
      mpz_class o = 1;
      for (const auto& d : ds) o *= d;
      return o;
    }
    case Kind::ElemAbelian:
      return pow_z(p, k);
    case Kind::Dihedral:
      return n;
    case Kind::Frobenius:
      return mpz_class(p) * m;
    case Kind::Ext:
      return normal_part->order() * quotient_part->order();
    case Kind::Product: {
      mpz_class o = 1;
      for (const auto& c : children) o *= c->order();
      return o;
    }
    case Kind::Lie:
      return lie_order(family, m, q);
    case Kind::Alt:
      return factorial(k) / 2;
    case Kind::Sporadic:
      return sporadic_datum(name).order;
    case Kind::Tits:
      return sporadic_datum("Tits").order;
    case Kind::Opaque:
      return *attrs.order;
  }
  throw std::logic_error("descriptor: bad kind");
}

std::optional<FiniteAbelianGroup> Descriptor::as_abelian() const {
  switch (kind) {
    case Kind::Trivial:
      return FiniteAbelianGroup();
    case Kind::Cyclic:
      return FiniteAbelianGroup::cyclic(n);
    case Kind::Abelian:
      return FiniteAbelianGroup(ds);
    case Kind::ElemAbelian: {
      if (k > 64) {  // keep coordinate vectors manageable; callers fall back
        std::vector<mpz_class> f(k, mpz_class(p));
        return FiniteAbelianGroup(std::move(f));
      }
      return FiniteAbelianGroup::elem_abelian(p, k);
    }
    case Kind::Product: {
      std::vector<mpz_class> cyc;
      for (const auto& c : children) {
        auto a = c->as_abelian();
        if (!a) return std::nullopt;
        for (const auto& d : a->invariant_factors()) cyc.push_back(d);
      }
      return FiniteAbelianGroup::from_cyclic_factors(cyc);
    }
    default:
      return std::nullopt;
  }
}

std::optional<bool> Descriptor::solvable() const {
  switch (kind) {
    case Kind::Trivial:
    case Kind::Cyclic:
    case Kind::Abelian:
    case Kind::ElemAbelian:
    case Kind::Dihedral:
    case Kind::Frobenius:
      return true;
    case Kind::Lie:
    case Kind::Sporadic:
    case Kind::Tits:
      return false;
    case Kind::Alt:
      return k <= 4;
    case Kind::Ext: {
      auto a = normal_part->solvable(), b = quotient_part->solvable();
      if (a && b && *a && *b) return true;      // closed under extensions
      if ((a && !*a) || (b && !*b)) return false;  // subgroups and quotients inherit
      return std::nullopt;
    }
    case Kind::Product: {
      bool all_known = true;
      for (const auto& c : children) {
        auto s = c->solvable();
        if (s && !*s) return false;
        if (!s) all_known = false;
      }
      return all_known ? std::optional<bool>(true) : std::nullopt;
    }
    case Kind::Opaque:
      return attrs.solvable;
  }
  return std::nullopt;
}

std::optional<bool> Descriptor::nilpotent() const {
  switch (kind) {
    case Kind::Trivial:
    case Kind::Cyclic:
    case Kind::Abelian:
    case Kind::ElemAbelian:
      return true;
    case Kind::Dihedral: {
      // nilpotent exactly when the order is a power of 2
      mpz_class o = n;
      while (o % 2 == 0) o /= 2;
      return o == 1;
    }
    case Kind::Frobenius:
    case Kind::Lie:
    case Kind::Sporadic:
    case Kind::Tits:
      return false;
    case Kind::Alt:
      return k == 3;
    case Kind::Ext: {
      // not closed under extensions, but subgroups and quotients inherit it
      auto a = normal_part->nilpotent(), b = quotient_part->nilpotent();
      if ((a && !*a) || (b && !*b)) return false;
      return std::nullopt;
    }
    case Kind::Product: {
      bool all_known = true;
      for (const auto& c : children) {
        auto s = c->nilpotent();
        if (s && !*s) return false;
        if (!s) all_known = false;
      }
      return all_known ? std::optional<bool>(true) : std::nullopt;
    }
    case Kind::Opaque:
      return attrs.nilpotent;
  }
  return std::nullopt;
}

std::optional<mpz_class> Descriptor::max_elem_order() const {
  switch (kind) {
    case Kind::Trivial:
      return mpz_class(1);
    case Kind::Cyclic:
      return n;
    case Kind::Abelian:
      return ds.back();
    case Kind::ElemAbelian:
      return mpz_class(p);
    case Kind::Dihedral:
      return n / 2;  // the rotation of full order beats the reflections
    case Kind::Frobenius:
      return mpz_class(p);  // complement elements have order dividing m < p
    case Kind::Alt:
      if (k == 3) return mpz_class(3);
      if (k == 4) return mpz_class(3);
      return std::nullopt;
    case Kind::Product: {
      // abelian product: exponent of the product group
      if (auto a = as_abelian()) return a->exponent();
      return std::nullopt;
    }
    case Kind::Opaque:
      return attrs.max_elem_order;
    default:
      return std::nullopt;
  }
}

std::optional<mpz_class> Descriptor::char_cyclic() const {
  if (kind == Kind::Opaque && attrs.char_cyclic) return attrs.char_cyclic;
  if (auto a = as_abelian()) return a->exponent();  // the largest invariant factor
  return max_elem_order();
}

std::optional<unsigned long> Descriptor::alt_degree() const {
  switch (kind) {
    case Kind::Trivial:
    case Kind::Cyclic:
    case Kind::Abelian:
    case Kind::ElemAbelian:
    case Kind::Dihedral:
    case Kind::Frobenius:
      return 0;
    case Kind::Lie:
    case Kind::Sporadic:
    case Kind::Tits:
      // composition factor is the group itself; alternating only via the
      // exceptional isomorphisms of degree < 9, absorbed by the 2^10 floor
      return 0;
    case Kind::Alt:
      return k >= 5 ? k : 0;
    case Kind::Ext: {
      auto a = normal_part->alt_degree(), b = quotient_part->alt_degree();
      if (!a || !b) return std::nullopt;
      return std::max(*a, *b);
    }
    case Kind::Product: {
      unsigned long best = 0;
      for (const auto& c : children) {
        auto a = c->alt_degree();
        if (!a) return std::nullopt;
        best = std::max(best, *a);
      }
      return best;
    }
    case Kind::Opaque:
      return attrs.alt_degree;
  }
  return std::nullopt;
}

bool Descriptor::noncyclic() const {
  switch (kind) {
    case Kind::Trivial:
    case Kind::Cyclic:
      return false;
    case Kind::Abelian:
      return ds.size() >= 2;  // invariant factors, so rank is honest
    case Kind::ElemAbelian:
      return k >= 2;
    case Kind::Dihedral:
    case Kind::Frobenius:
    case Kind::Lie:
    case Kind::Sporadic:
    case Kind::Tits:
      return true;  // non-abelian
    case Kind::Alt:
      return k >= 4;
    case Kind::Ext:
      // a non-cyclic subgroup or quotient forbids cyclicity
      return normal_part->noncyclic() || quotient_part->noncyclic();
    case Kind::Product: {
      for (const auto& c : children)
        if (c->noncyclic()) return true;
      // two factors of non-coprime order cannot assemble into a cyclic group
      for (size_t i = 0; i < children.size(); ++i)
        for (size_t j = i + 1; j < children.size(); ++j)
          if (gcd_z(children[i]->order(), children[j]->order()) > 1) return true;
      return false;
    }
    case Kind::Opaque:
      return attrs.max_elem_order && *attrs.max_elem_order < *attrs.order;
  }
  return false;
}

std::string Descriptor::to_string() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::Trivial:
      return "trivial";
    case Kind::Cyclic:
      out << "cyclic(" << n << ")";
      break;
    case Kind::Abelian: {
      out << "abelian(";
      for (size_t i = 0; i < ds.size(); ++i) out << (i ? "," : "") << ds[i];
      out << ")";
      break;
    }
    case Kind::ElemAbelian:
      out << "elem_abelian(" << p << "," << k << ")";
      break;
    case Kind::Dihedral:
      out << "dihedral(" << n << ")";
      break;
    case Kind::Frobenius:
      out << "frobenius(" << p << "," << m << ")";
      break;
    case Kind::Ext:
      out << "ext(" << normal_part->to_string() << "; " << quotient_part->to_string() << ")";
      break;
    case Kind::Product: {
      out << "product(";
      for (size_t i = 0; i < children.size(); ++i)
        out << (i ? ", " : "") << children[i]->to_string();
      out << ")";
      break;
    }
    case Kind::Lie:
      out << "lie(" << family << "," << m << "," << q << ")";
      break;
    case Kind::Alt:
      out << "alt(" << k << ")";
      break;
    case Kind::Sporadic:
      out << "sporadic(" << name << ")";
      break;
    case Kind::Tits:
      return "tits";
    case Kind::Opaque: {
      out << "opaque(order=" << *attrs.order;
      if (attrs.solvable) out << ", solvable=" << (*attrs.solvable ? "true" : "false");
      if (attrs.nilpotent) out << ", nilpotent=" << (*attrs.nilpotent ? "true" : "false");
      if (attrs.max_elem_order) out << ", max_elem_order=" << *attrs.max_elem_order;
      if (attrs.char_cyclic) out << ", C=" << *attrs.char_cyclic;
      if (attrs.alt_degree) out << ", alt_degree=" << *attrs.alt_degree;
      for (const auto& f : attrs.facts) {
        switch (f.type) {
          case Fact::Type::Subgroup:
            out << ", fact=subgroup(" << f.sub->to_string() << ", index=" << f.index << ")";
            break;
          case Fact::Type::Section:
            out << ", fact=section(" << f.sub->to_string() << ")";
            break;
          case Fact::Type::Normal:
            out << ", fact=normal(" << f.sub->to_string() << "; " << f.quotient->to_string()
                << ")";
            break;
        }
      }
      out << ")";
      break;
    }
  }
  return out.str();
}

namespace {

class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  DescPtr parse() {
    DescPtr d = node();
    ws();
    if (i_ < s_.size()) fail("trailing input");
    return d;
  }

 private:
  const std::string& s_;
  size_t i_ = 0;

  [[noreturn]] void fail(const std::string& msg) const { throw DescriptorError(msg, i_); }

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

  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  std::string ident() {
    ws();
    size_t start = i_;
    while (i_ < s_.size() && (std::isalnum((unsigned char)s_[i_]) || s_[i_] == '_')) ++i_;
    if (i_ == start) fail("expected a name");
    return s_.substr(start, i_ - start);
  }

  mpz_class integer() {
    ws();
    size_t start = i_;
    while (i_ < s_.size() && std::isdigit((unsigned char)s_[i_])) ++i_;
    if (i_ == start) fail("expected an integer");
    return mpz_class(s_.substr(start, i_ - start));
  }

  unsigned long small_integer(const char* what) {
    mpz_class v = integer();
    if (!v.fits_ulong_p()) fail(std::string(what) + " too large");
    return v.get_ui();
  }

  bool boolean() {
    std::string w = ident();
    if (w == "true") return true;
    if (w == "false") return false;
    fail("expected true or false");
  }

  template <typename F>
  DescPtr guarded(size_t at, F&& f) {
    try {
      return f();
    } catch (const std::invalid_argument& e) {
      throw DescriptorError(e.what(), at);
    }
  }

  DescPtr node() {
    ws();
    size_t at = i_;
    std::string head = ident();
    if (head == "trivial") return make_trivial();
    if (head == "tits") return make_tits();
    if (head == "cyclic") {
      expect('(');
      mpz_class v = integer();
      expect(')');
      return guarded(at, [&] { return make_cyclic(v); });
    }
    if (head == "abelian") {
      expect('(');
      std::vector<mpz_class> ds;
      ds.push_back(integer());
      while (eat(',')) ds.push_back(integer());
      expect(')');
      return guarded(at, [&] { return make_abelian(std::move(ds)); });
    }
    if (head == "elem_abelian") {
      expect('(');
      unsigned long p = small_integer("p");
      expect(',');
      unsigned long k = small_integer("k");
      expect(')');
      return guarded(at, [&] { return make_elem_abelian(p, k); });
    }
    if (head == "dihedral") {
      expect('(');
      mpz_class v = integer();
      expect(')');
      return guarded(at, [&] { return make_dihedral(v); });
    }
    if (head == "frobenius") {
      expect('(');
      unsigned long p = small_integer("p");
      expect(',');
      unsigned long m = small_integer("m");
      expect(')');
      return guarded(at, [&] { return make_frobenius(p, m); });
    }
    if (head == "ext") {
      expect('(');
      DescPtr a = node();
      expect(';');
      DescPtr b = node();
      expect(')');
      return guarded(at, [&] { return make_ext(std::move(a), std::move(b)); });
    }
    if (head == "product") {
      expect('(');
      std::vector<DescPtr> cs;
      cs.push_back(node());
      while (eat(',')) cs.push_back(node());
      expect(')');
      return guarded(at, [&] { return make_product(std::move(cs)); });
    }
    if (head == "lie") {
      expect('(');
      std::string fam = ident();
      expect(',');
      unsigned long m = small_integer("m");
      expect(',');
      mpz_class q = integer();
      expect(')');
      return guarded(at, [&] { return make_lie(fam, m, q); });
    }
    if (head == "alt") {
      expect('(');
      unsigned long k = small_integer("k");
      expect(')');
      return guarded(at, [&] { return make_alt(k); });
    }
    if (head == "sporadic") {
      expect('(');
      std::string name = ident();
      expect(')');
      return guarded(at, [&] { return make_sporadic(name); });
    }
    if (head == "opaque") return opaque(at);
    fail("unknown descriptor kind '" + head + "'");
  }

  DescPtr opaque(size_t at) {
    expect('(');
    OpaqueAttrs attrs;
    do {
      size_t key_at = i_;
      std::string key = ident();
      expect('=');
      if (key == "order") {
        attrs.order = integer();
      } else if (key == "solvable") {
        attrs.solvable = boolean();
      } else if (key == "nilpotent") {
        attrs.nilpotent = boolean();
      } else if (key == "max_elem_order") {
        attrs.max_elem_order = integer();
      } else if (key == "C") {
        attrs.char_cyclic = integer();
      } else if (key == "alt_degree") {
        attrs.alt_degree = small_integer("alt_degree");
      } else if (key == "fact") {
        attrs.facts.push_back(fact());
      } else {
        i_ = key_at;
        fail("unknown opaque attribute '" + key + "'");
      }
    } while (eat(','));
    expect(')');
    return guarded(at, [&] { return make_opaque(std::move(attrs)); });
  }

  Fact fact() {
    std::string what = ident();
    Fact f;
    if (what == "subgroup") {
      f.type = Fact::Type::Subgroup;
      expect('(');
      f.sub = node();
      expect(',');
      std::string key = ident();
      if (key != "index") fail("expected index=");
      expect('=');
      f.index = integer();
      expect(')');
    } else if (what == "section") {
      f.type = Fact::Type::Section;
      expect('(');
      f.sub = node();
      expect(')');
    } else if (what == "normal") {
      f.type = Fact::Type::Normal;
      expect('(');
      f.sub = node();
      expect(';');
      f.quotient = node();
      expect(')');
    } else {
      fail("unknown fact kind '" + what + "'");
    }
    return f;
  }
};

}  // namespace

DescPtr parse_descriptor(const std::string& text) { return Parser(text).parse(); }

}  // namespace noether
