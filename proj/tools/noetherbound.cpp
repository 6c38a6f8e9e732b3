// Command line front end: exact Davenport/beta computations, the zero-sum and
// monomial primitives, certified derivations, and the table1 ratio report.
// Exit codes: 0 success, 1 computational failure, 2 usage error.
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "noetherbound/atlas.hpp"
#include "noetherbound/engine.hpp"
#include "noetherbound/monomial.hpp"

using noether::BoundValue;
using noether::FiniteAbelianGroup;
using noether::GroupElement;
using noether::ZSequence;
using ordered_json = nlohmann::ordered_json;

namespace {

// integers that fit a JSON number stay numeric, the rest become strings
ordered_json json_int(const mpz_class& v) {
  if (v.fits_slong_p()) return ordered_json(v.get_si());
  return ordered_json(v.get_str());
}

ordered_json json_element(const GroupElement& g) {
  ordered_json a = ordered_json::array();
  for (const auto& c : g.coords) a.push_back(json_int(c));
  return a;
}

ordered_json json_sequence(const ZSequence& s) {
  ordered_json a = ordered_json::array();
  for (const auto& [g, count] : s.entries()) {
    ordered_json e;
    e["element"] = json_element(g);
    e["count"] = json_int(count);
    a.push_back(std::move(e));
  }
  return a;
}

FiniteAbelianGroup abelian_from_arg(const std::string& text) {
  auto d = noether::parse_descriptor(text);
  auto ab = d->as_abelian();
  if (!ab)
    throw noether::EngineError(d->to_string() +
                               " is not a known abelian group; davenport/beta/atoms "
                               "need an abelian descriptor");
  return *ab;
}

std::vector<mpz_class> parse_int_list(const std::string& text, char sep) {
  std::vector<mpz_class> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) {
    size_t a = item.find_first_not_of(" \t");
    size_t b = item.find_last_not_of(" \t");
    if (a == std::string::npos) throw std::invalid_argument("empty entry in list '" + text + "'");
    out.emplace_back(item.substr(a, b - a + 1));
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

// elements separated by ',', coordinates inside an element by ':'
std::vector<GroupElement> parse_elements(const FiniteAbelianGroup& G, const std::string& text) {
  std::vector<GroupElement> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    GroupElement g;
    for (auto& c : parse_int_list(item, ':')) {
      mpz_class r = c;
      g.coords.push_back(r);
    }
    if (g.coords.size() != G.rank())
      throw std::invalid_argument("element '" + item + "' has " +
                                  std::to_string(g.coords.size()) + " coordinates, group rank is " +
                                  std::to_string(G.rank()));
    for (size_t i = 0; i < g.coords.size(); ++i) {
      mpz_class m = g.coords[i] % G.invariant_factors()[i];
      if (m < 0) m += G.invariant_factors()[i];
      g.coords[i] = m;
    }
    out.push_back(std::move(g));
  }
  return out;
}

struct GlobalFlags {
  bool json = false;
  unsigned precision = 192;
  uint64_t budget_nodes = 5'000'000;

  noether::EngineOptions engine_options() const {
    noether::EngineOptions o;
    o.precision_bits = precision;
    o.budget.max_nodes = budget_nodes;
    return o;
  }
};

void print_davenport(const FiniteAbelianGroup& G, const noether::DavenportResult& r,
                     const GlobalFlags& fl, const char* label) {
  if (fl.json) {
    ordered_json j;
    j["group"] = G.to_string();
    j["value"] = json_int(r.value);
    j["closed_form"] = r.closed_form;
    if (!r.closed_form) {
      j["nodes"] = r.nodes;
      j["memo_states"] = r.memo_states;
    }
    j["witness"] = json_sequence(r.witness);
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::cout << label << "(" << G.to_string() << ") = " << r.value
            << (r.closed_form ? "  [closed form]" : "") << "\n";
  if (!r.closed_form)
    std::cout << "search: " << r.nodes << " nodes, " << r.memo_states << " memoized states\n";
  std::cout << "zero-sum-free witness of length " << r.witness.length() << ": "
            << r.witness.to_string() << "\n";
}

int run_check(const std::string& path, const GlobalFlags& fl) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot open " << path << "\n";
    return 1;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  auto cert = noether::certificate_from_string(buf.str());
  std::string why;
  bool ok = noether::check_certificate(*cert, &why, fl.engine_options());
  if (fl.json) {
    ordered_json j;
    j["valid"] = ok;
    if (!ok) j["why"] = why;
    std::cout << j.dump(2) << "\n";
  } else if (ok) {
    std::cout << "VALID: " << cert->goal << " for " << cert->subject->to_string() << " via "
              << cert->rule << "\n";
  } else {
    std::cout << "INVALID: " << why << "\n";
  }
  return ok ? 0 : 1;
}

int run_table1(const GlobalFlags& fl) {
  auto rep = noether::table1_check(fl.precision);
  if (fl.json) {
    ordered_json rows = ordered_json::array();
    for (const auto& e : rep.entries) {
      ordered_json r;
      r["family"] = e.family;
      r["m"] = e.m;
      r["q"] = json_int(e.q);
      r["printed"] = e.printed;
      r["matched"] = e.matched;
      if (e.matched) r["matched_via"] = e.matched_via;
      r["computed"] = e.computed;
      rows.push_back(std::move(r));
    }
    ordered_json j;
    j["rows"] = std::move(rows);
    j["matched"] = rep.matched;
    j["total"] = rep.total;
    j["anomalies"] = rep.anomalies;
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  for (const auto& e : rep.entries) {
    std::ostringstream head;
    head << e.family << "(m=" << e.m << ", q=" << e.q << ")";
    std::cout << (e.matched ? "  ok   " : " MISS  ") << head.str();
    for (size_t i = head.str().size(); i < 22; ++i) std::cout << ' ';
    std::cout << "printed " << e.printed;
    if (e.matched)
      std::cout << "  via " << e.matched_via;
    else
      for (const auto& c : e.computed) std::cout << "  computed " << c;
    std::cout << "\n";
  }
  std::cout << rep.matched << "/" << rep.total << " printed values reproduced\n";
  for (const auto& a : rep.anomalies) std::cout << "anomaly: " << a << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certified Noether number bounds for finite groups"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalFlags fl;
  app.add_flag("--json", fl.json, "machine-readable JSON output");
  app.add_option("--precision", fl.precision, "working precision in bits for enclosures")
      ->check(CLI::Range(32u, 1u << 20));
  app.add_option("--budget", fl.budget_nodes, "search node budget for Davenport computations");

  std::string group_arg, seq_arg, monomial_arg, descriptor_arg, weights_arg, cert_path;
  std::string goal = "beta_upper";
  unsigned long zs_p = 0;
  std::string zs_h;

  auto* dav = app.add_subcommand("davenport", "exact Davenport constant D(G) with witness");
  dav->add_option("group", group_arg, "abelian group descriptor")->required();

  auto* beta = app.add_subcommand("beta", "Noether number of an abelian group (= D(G))");
  beta->add_option("group", group_arg, "abelian group descriptor")->required();

  auto* zs = app.add_subcommand(
      "zerosum", "shortest zero-sum subsequence over Z_p among sequences with length >= p "
                 "and multiplicities <= h");
  zs->add_option("p", zs_p, "prime modulus")->required();
  zs->add_option("bound", zs_h, "multiplicity bound / length cap h")->required();
  zs->add_option("seq", seq_arg, "comma-separated residues, e.g. 1,1,2,3")->required();

  auto* rd = app.add_subcommand("rowdec", "squarefree row decomposition of a monomial");
  rd->add_option("monomial", monomial_arg, "e.g. \"y1^2 y3\"")->required();

  auto* at = app.add_subcommand(
      "atoms", "atoms and beta of the invariant monoid of a weighted diagonal action");
  at->add_option("group", group_arg, "abelian group descriptor")->required();
  at->add_option("weights", weights_arg,
                 "comma-separated weights; coordinates inside an element use ':'")
      ->required();

  auto* dv = app.add_subcommand("derive", "best certified bound for a group descriptor");
  dv->add_option("descriptor", descriptor_arg, "group descriptor")->required();
  dv->add_option("--goal", goal, "exact | beta_upper | beta_lower | n_lower | n_upper")
      ->check(CLI::IsMember({"exact", "beta_upper", "beta_lower", "n_lower", "n_upper"}));

  auto* ci = app.add_subcommand("certify-index",
                                "certified index bound for a characteristic cyclic subgroup");
  ci->add_option("descriptor", descriptor_arg, "group descriptor")->required();

  auto* ck = app.add_subcommand("check", "verify a certificate file by independent replay");
  ck->add_option("certificate", cert_path, "path to certificate JSON")->required();

  app.add_subcommand("table1", "reproduce the tabulated simple-group estimates");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (dav->parsed() || beta->parsed()) {
      FiniteAbelianGroup G = abelian_from_arg(group_arg);
      noether::SearchBudget budget;
      budget.max_nodes = fl.budget_nodes;
      auto r = noether::davenport_constant(G, budget);
      print_davenport(G, r, fl, dav->parsed() ? "D" : "beta");
      return 0;
    }

    if (zs->parsed()) {
      if (!noether::is_prime_ul(zs_p)) throw std::invalid_argument("p must be prime");
      FiniteAbelianGroup G = FiniteAbelianGroup::cyclic(zs_p);
      ZSequence S(G);
      for (auto& v : parse_int_list(seq_arg, ',')) {
        GroupElement g;
        mpz_class m = v % zs_p;
        if (m < 0) m += zs_p;
        g.coords.push_back(m);
        S.push(g);
      }
      mpz_class h(zs_h);
      ZSequence T = noether::find_short_zero_sum(S, h);
      if (fl.json) {
        ordered_json j;
        j["p"] = zs_p;
        j["h"] = json_int(h);
        j["length"] = json_int(T.length());
        j["witness"] = json_sequence(T);
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "zero-sum subsequence of length " << T.length() << ": " << T.to_string()
                  << "\n";
      }
      return 0;
    }

    if (rd->parsed()) {
      noether::Monomial f = noether::parse_monomial(monomial_arg);
      auto dec = noether::row_decomposition(f);
      if (fl.json) {
        ordered_json j;
        j["monomial"] = f.to_string();
        j["degree"] = f.degree();
        j["height"] = f.max_exponent();
        ordered_json rows = ordered_json::array();
        for (const auto& g : dec.rows) rows.push_back(g.to_string());
        j["rows"] = std::move(rows);
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << f.to_string() << " = ";
        for (size_t i = 0; i < dec.rows.size(); ++i)
          std::cout << (i ? " * " : "") << "(" << dec.rows[i].to_string() << ")";
        std::cout << "\n";
      }
      return 0;
    }

    if (at->parsed()) {
      FiniteAbelianGroup G = abelian_from_arg(group_arg);
      auto weights = parse_elements(G, weights_arg);
      noether::WeightedModule wm(G, weights);
      noether::SearchBudget budget;
      budget.max_nodes = fl.budget_nodes;
      auto r = noether::atoms_and_beta(wm, budget);
      if (fl.json) {
        ordered_json j;
        j["group"] = G.to_string();
        ordered_json ws = ordered_json::array();
        for (const auto& w : weights) ws.push_back(json_element(w));
        j["weights"] = std::move(ws);
        ordered_json as = ordered_json::array();
        for (const auto& a : r.atoms) as.push_back(a);
        j["atoms"] = std::move(as);
        j["beta"] = json_int(r.beta);
        j["degree_cap"] = json_int(r.degree_cap);
        j["truncated"] = r.truncated;
        std::cout << j.dump(2) << "\n";
      } else {
        for (const auto& a : r.atoms) {
          std::cout << "atom";
          for (auto e : a) std::cout << " " << e;
          std::cout << "\n";
        }
        std::cout << r.atoms.size() << " atoms, beta = " << r.beta
                  << " (degree cap " << r.degree_cap << (r.truncated ? ", truncated" : "")
                  << ")\n";
      }
      return 0;
    }

    if (dv->parsed()) {
      auto d = noether::parse_descriptor(descriptor_arg);
      noether::Engine engine(fl.engine_options());
      auto cert = engine.derive(d, goal);
      if (fl.json)
        std::cout << noether::certificate_to_string(*cert) << "\n";
      else
        std::cout << noether::render_certificate_tree(*cert);
      return 0;
    }

    if (ci->parsed()) {
      auto d = noether::parse_descriptor(descriptor_arg);
      noether::Engine engine(fl.engine_options());
      auto r = engine.certify_cyclic_index(d);
      if (fl.json) {
        ordered_json j;
        j["main"] = noether::certificate_to_json(*r.main);
        if (r.corollary && r.corollary != r.main)
          j["corollary"] = noether::certificate_to_json(*r.corollary);
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << noether::render_certificate_tree(*r.main);
        if (r.corollary && r.corollary != r.main)
          std::cout << "corollary:\n" << noether::render_certificate_tree(*r.corollary);
      }
      return 0;
    }

    if (ck->parsed()) return run_check(cert_path, fl);

    return run_table1(fl);
  } catch (const noether::DescriptorError& e) {
    std::cerr << "descriptor error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const noether::BudgetError& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
