// Thin pybind11 layer: strings and JSON in, JSON out. Structured values are
// serialized so arbitrary-precision integers survive the crossing; the python
// package parses them back.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "json.hpp"
#include "noetherbound/atlas.hpp"
#include "noetherbound/engine.hpp"
#include "noetherbound/monomial.hpp"

namespace py = pybind11;
using ordered_json = nlohmann::ordered_json;
using namespace noether;

namespace {

ordered_json json_int(const mpz_class& v) {
  if (v.fits_slong_p()) return ordered_json(v.get_si());
  return ordered_json(v.get_str());
}

EngineOptions options_for(unsigned precision, uint64_t max_nodes) {
  EngineOptions o;
  o.precision_bits = precision;
  o.budget.max_nodes = max_nodes;
  return o;
}

FiniteAbelianGroup abelian_arg(const std::string& text) {
  auto d = parse_descriptor(text);
  auto ab = d->as_abelian();
  if (!ab) throw std::invalid_argument(d->to_string() + " is not a known abelian group");
  return *ab;
}

std::string davenport_json(const std::string& group, uint64_t max_nodes) {
  FiniteAbelianGroup G = abelian_arg(group);
  SearchBudget budget;
  budget.max_nodes = max_nodes;
  auto r = davenport_constant(G, budget);
  ordered_json j;
  j["group"] = G.to_string();
  j["value"] = json_int(r.value);
  j["closed_form"] = r.closed_form;
  j["nodes"] = r.nodes;
  ordered_json w = ordered_json::array();
  for (const auto& [g, count] : r.witness.entries()) {
    ordered_json e;
    ordered_json coords = ordered_json::array();
    for (const auto& c : g.coords) coords.push_back(json_int(c));
    e["element"] = std::move(coords);
    e["count"] = json_int(count);
    w.push_back(std::move(e));
  }
  j["witness"] = std::move(w);
  return j.dump();
}

std::vector<long> zerosum_py(unsigned long p, const std::vector<long>& seq, long h) {
  if (!is_prime_ul(p)) throw std::invalid_argument("p must be prime");
  FiniteAbelianGroup G = FiniteAbelianGroup::cyclic(p);
  ZSequence S(G);
  for (long v : seq) {
    GroupElement g;
    mpz_class m = mpz_class(v) % p;
    if (m < 0) m += p;
    g.coords.push_back(m);
    S.push(g);
  }
  ZSequence T = find_short_zero_sum(S, h);
  std::vector<long> out;
  for (const auto& [g, count] : T.entries())
    for (mpz_class i = 0; i < count; ++i) out.push_back(g.coords[0].get_si());
  return out;
}

std::vector<std::string> rowdec_py(const std::string& monomial) {
  auto dec = row_decomposition(parse_monomial(monomial));
  std::vector<std::string> out;
  for (const auto& g : dec.rows) out.push_back(g.to_string());
  return out;
}

std::string atoms_json(const std::string& group, const std::vector<std::vector<long>>& weights,
                       uint64_t max_nodes) {
  FiniteAbelianGroup G = abelian_arg(group);
  std::vector<GroupElement> ws;
  for (const auto& w : weights) {
    if (w.size() != G.rank())
      throw std::invalid_argument("weight arity does not match the group rank");
    GroupElement g;
    for (size_t i = 0; i < w.size(); ++i) {
      mpz_class m = mpz_class(w[i]) % G.invariant_factors()[i];
      if (m < 0) m += G.invariant_factors()[i];
      g.coords.push_back(m);
    }
    ws.push_back(std::move(g));
  }
  WeightedModule wm(G, ws);
  SearchBudget budget;
  budget.max_nodes = max_nodes;
  auto r = atoms_and_beta(wm, budget);
  ordered_json j;
  j["group"] = G.to_string();
  j["atoms"] = r.atoms;
  j["beta"] = json_int(r.beta);
  j["degree_cap"] = json_int(r.degree_cap);
  j["truncated"] = r.truncated;
  return j.dump();
}

std::string derive_json(const std::string& descriptor, const std::string& goal,
                        unsigned precision, uint64_t max_nodes) {
  Engine engine(options_for(precision, max_nodes));
  auto cert = engine.derive(parse_descriptor(descriptor), goal);
  return certificate_to_string(*cert);
}

std::string derive_candidates_json(const std::string& descriptor, const std::string& goal,
                                   unsigned precision, uint64_t max_nodes) {
  Engine engine(options_for(precision, max_nodes));
  auto cands = engine.derive_candidates(parse_descriptor(descriptor), goal);
  ordered_json a = ordered_json::array();
  for (const auto& c : cands) a.push_back(certificate_to_json(*c));
  return a.dump();
}

std::pair<bool, std::string> check_certificate_py(const std::string& cert_json,
                                                  unsigned precision, uint64_t max_nodes) {
  auto cert = certificate_from_string(cert_json);
  std::string why;
  bool ok = check_certificate(*cert, &why, options_for(precision, max_nodes));
  return {ok, why};
}

std::string certify_index_json(const std::string& descriptor, unsigned precision,
                               uint64_t max_nodes) {
  Engine engine(options_for(precision, max_nodes));
  auto r = engine.certify_cyclic_index(parse_descriptor(descriptor));
  ordered_json j;
  j["main"] = certificate_to_json(*r.main);
  if (r.corollary && r.corollary != r.main) j["corollary"] = certificate_to_json(*r.corollary);
  return j.dump();
}

std::string table1_json(unsigned precision) {
  auto rep = table1_check(precision);
  ordered_json rows = ordered_json::array();
  for (const auto& e : rep.entries) {
    ordered_json r;
    r["family"] = e.family;
    r["m"] = e.m;
    r["q"] = json_int(e.q);
    r["printed"] = e.printed;
    r["matched"] = e.matched;
    r["matched_via"] = e.matched_via;
    r["computed"] = e.computed;
    rows.push_back(std::move(r));
  }
  ordered_json j;
  j["rows"] = std::move(rows);
  j["matched"] = rep.matched;
  j["total"] = rep.total;
  j["anomalies"] = rep.anomalies;
  return j.dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "certified Noether number bounds for finite groups";

  py::register_exception<DescriptorError>(m, "DescriptorError", PyExc_ValueError);
  py::register_exception<BudgetError>(m, "BudgetError", PyExc_RuntimeError);
  py::register_exception<EngineError>(m, "EngineError", PyExc_RuntimeError);
  py::register_exception<CertificateError>(m, "CertificateError", PyExc_ValueError);

  m.def("canonical_descriptor",
        [](const std::string& text) { return parse_descriptor(text)->to_string(); },
        py::arg("text"), "parse a group descriptor and return its canonical form");
  m.def("group_order",
        [](const std::string& text) { return parse_descriptor(text)->order().get_str(); },
        py::arg("text"), "order of the described group, as a decimal string");
  m.def("davenport_json", &davenport_json, py::arg("group"),
        py::arg("max_nodes") = uint64_t(5'000'000));
  m.def("find_short_zero_sum", &zerosum_py, py::arg("p"), py::arg("seq"), py::arg("h"),
        "shortest zero-sum subsequence over Z_p with length <= h, as a sorted list");
  m.def("row_decomposition", &rowdec_py, py::arg("monomial"),
        "squarefree rows g_1, g_2, ... with g_{i+1} | g_i and product = input");
  m.def("atoms_json", &atoms_json, py::arg("group"), py::arg("weights"),
        py::arg("max_nodes") = uint64_t(5'000'000));
  m.def("derive_json", &derive_json, py::arg("descriptor"), py::arg("goal") = "beta_upper",
        py::arg("precision") = 192u, py::arg("max_nodes") = uint64_t(5'000'000));
  m.def("derive_candidates_json", &derive_candidates_json, py::arg("descriptor"),
        py::arg("goal") = "beta_upper", py::arg("precision") = 192u,
        py::arg("max_nodes") = uint64_t(5'000'000));
  m.def("check_certificate", &check_certificate_py, py::arg("cert_json"),
        py::arg("precision") = 192u, py::arg("max_nodes") = uint64_t(5'000'000),
        "independently replay a certificate; returns (valid, why)");
  m.def("certify_index_json", &certify_index_json, py::arg("descriptor"),
        py::arg("precision") = 192u, py::arg("max_nodes") = uint64_t(5'000'000));
  m.def("table1_json", &table1_json, py::arg("precision") = 192u);
}
