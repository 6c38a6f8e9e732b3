#include "noetherbound/certificate.hpp"

#include <sstream>

namespace noether {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string q_str(const mpq_class& v) {
  return v.get_den() == 1 ? v.get_num().get_str() : v.get_str();
}

mpq_class q_parse(const std::string& s) {
  mpq_class v;
  if (mpq_set_str(v.get_mpq_t(), s.c_str(), 10) != 0 || mpz_sgn(v.get_den().get_mpz_t()) <= 0)
    throw CertificateError("bad rational '" + s + "'");
  v.canonicalize();
  return v;
}

std::string goal_relation(const std::string& goal) {
  if (goal == "beta_upper") return "beta <=";
  if (goal == "beta_lower") return "beta >=";
  if (goal == "n_lower") return "n >=";
  if (goal == "n_upper") return "n <=";
  if (goal == "exact") return "beta =";
  if (goal == "index_upper") return "index <=";
  return goal + ":";
}

void render_node(const Certificate& c, int depth, int digits, std::ostream& out) {
  for (int i = 0; i < depth; ++i) out << "  ";
  out << goal_relation(c.goal) << " ";
  if (c.value.is_exact() && c.value.exact_value().get_den() == 1) {
    out << c.value.exact_value().get_num().get_str();
  } else {
    out << c.value.expr() << "  in [" << c.value.decimal_lo(digits) << ", "
        << c.value.decimal_hi(digits) << "]";
  }
  out << "   for " << c.subject->to_string();
  out << "   [" << c.rule << (c.external ? ", external" : "") << "]";
  if (!c.params.empty()) {
    out << " {";
    for (size_t i = 0; i < c.params.size(); ++i)
      out << (i ? ", " : "") << c.params[i].first << "=" << c.params[i].second;
    out << "}";
  }
  out << "\n";
  for (const auto& p : c.premises) render_node(*p, depth + 1, digits, out);
}

}  // namespace

ordered_json bound_value_to_json(const BoundValue& v, int digits) {
  ordered_json j;
  switch (v.form()) {
    case BoundValue::Form::Exact:
      j["form"] = "exact";
      break;
    case BoundValue::Form::PowerProduct:
      j["form"] = "power_product";
      break;
    case BoundValue::Form::Enclosure:
      j["form"] = "enclosure";
      break;
  }
  j["decimal_lo"] = v.decimal_lo(digits);  // rounded down
  j["decimal_hi"] = v.decimal_hi(digits);  // rounded up
  j["expr"] = v.expr();
  switch (v.form()) {
    case BoundValue::Form::Exact:
      j["exact"] = q_str(v.exact_value());
      break;
    case BoundValue::Form::PowerProduct: {
      j["coeff"] = q_str(v.coeff());
      ordered_json fs = ordered_json::array();
      for (const auto& f : v.factors())
        fs.push_back({{"base", f.base.get_str()}, {"exp", q_str(f.exp)}});
      j["factors"] = std::move(fs);
      break;
    }
    case BoundValue::Form::Enclosure:
      j["lo"] = q_str(v.lo());
      j["hi"] = q_str(v.hi());
      break;
  }
  return j;
}

BoundValue bound_value_from_json(const json& j) {
  if (!j.is_object() || !j.contains("form") || !j["form"].is_string())
    throw CertificateError("value: missing form");
  std::string form = j["form"];
  auto str_field = [&](const char* key) -> std::string {
    if (!j.contains(key) || !j[key].is_string())
      throw CertificateError(std::string("value: missing ") + key);
    return j[key];
  };
  BoundValue v;
  if (form == "exact") {
    v = BoundValue::exact(q_parse(str_field("exact")));
  } else if (form == "power_product") {
    mpq_class coeff = q_parse(str_field("coeff"));
    if (!j.contains("factors") || !j["factors"].is_array())
      throw CertificateError("value: missing factors");
    std::vector<PowerFactor> fs;
    for (const auto& f : j["factors"]) {
      if (!f.is_object() || !f.contains("base") || !f.contains("exp"))
        throw CertificateError("value: bad factor");
      mpq_class base = q_parse(f["base"].get<std::string>());
      if (base.get_den() != 1) throw CertificateError("value: factor base not an integer");
      fs.push_back({base.get_num(), q_parse(f["exp"].get<std::string>())});
    }
    v = BoundValue::power_product(std::move(coeff), std::move(fs));
  } else if (form == "enclosure") {
    v = BoundValue::enclosure(q_parse(str_field("lo")), q_parse(str_field("hi")));
  } else {
    throw CertificateError("value: unknown form " + form);
  }
  // the decimal fields are presentation, but they must agree with the payload
  int digits = (int)str_field("decimal_lo").size();  // upper bound on digits
  for (int d = 1; d <= digits; ++d) {
    if (v.decimal_lo(d) == j["decimal_lo"] && v.decimal_hi(d) == str_field("decimal_hi"))
      return v;
  }
  throw CertificateError("value: decimal fields do not match the payload");
}

ordered_json certificate_to_json(const Certificate& c, int digits) {
  ordered_json j;
  j["goal"] = c.goal;
  j["subject"] = c.subject->to_string();
  j["value"] = bound_value_to_json(c.value, digits);
  j["rule"] = c.rule;
  j["external"] = c.external;
  j["paper_anchor"] = c.anchor;
  if (!c.params.empty()) {
    // keys sorted so serialize(parse(s)) == s regardless of insertion order
    auto sorted = c.params;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    ordered_json p;
    for (const auto& [k, v] : sorted) p[k] = v;
    j["params"] = std::move(p);
  }
  ordered_json ps = ordered_json::array();
  for (const auto& p : c.premises) ps.push_back(certificate_to_json(*p, digits));
  j["premises"] = std::move(ps);
  return j;
}

std::string certificate_to_string(const Certificate& c, int digits) {
  return certificate_to_json(c, digits).dump(2);
}

CertPtr certificate_from_json(const json& j) {
  if (!j.is_object()) throw CertificateError("certificate: not an object");
  auto str_field = [&](const char* key) -> std::string {
    if (!j.contains(key) || !j[key].is_string())
      throw CertificateError(std::string("certificate: missing ") + key);
    return j[key];
  };
  auto c = std::make_shared<Certificate>();
  c->goal = str_field("goal");
  try {
    c->subject = parse_descriptor(str_field("subject"));
  } catch (const DescriptorError& e) {
    throw CertificateError(std::string("certificate: bad subject: ") + e.what());
  }
  if (!j.contains("value")) throw CertificateError("certificate: missing value");
  c->value = bound_value_from_json(j["value"]);
  c->rule = str_field("rule");
  c->external = j.value("external", false);
  c->anchor = str_field("paper_anchor");
  if (j.contains("params")) {
    if (!j["params"].is_object()) throw CertificateError("certificate: bad params");
    for (const auto& [k, v] : j["params"].items()) {
      if (!v.is_string()) throw CertificateError("certificate: bad param " + k);
      c->params.emplace_back(k, v.get<std::string>());
    }
  }
  if (j.contains("premises")) {
    if (!j["premises"].is_array()) throw CertificateError("certificate: bad premises");
    for (const auto& p : j["premises"]) c->premises.push_back(certificate_from_json(p));
  }
  return c;
}

CertPtr certificate_from_string(const std::string& text) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw CertificateError("certificate: invalid JSON");
  return certificate_from_json(j);
}

std::string render_certificate_tree(const Certificate& c, int digits) {
  std::ostringstream out;
  render_node(c, 0, digits, out);
  return out.str();
}

}  // namespace noether
