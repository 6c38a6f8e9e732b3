#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "noetherbound/bound_value.hpp"
#include "noetherbound/descriptor.hpp"

namespace noether {

struct CertificateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Certificate;
using CertPtr = std::shared_ptr<const Certificate>;

// One node of a replayable derivation DAG. goal is one of beta_upper,
// beta_lower, n_lower, n_upper, exact, index_upper. external marks rules
// whose content is imported from the literature rather than recomputed.
struct Certificate {
  std::string goal;
  DescPtr subject;
  BoundValue value;
  std::string rule;
  bool external = false;
  std::string anchor;  // serialized as "paper_anchor": the cited statement
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<CertPtr> premises;
};

nlohmann::ordered_json bound_value_to_json(const BoundValue& v, int digits = 15);
BoundValue bound_value_from_json(const nlohmann::json& j);

nlohmann::ordered_json certificate_to_json(const Certificate& c, int digits = 15);
std::string certificate_to_string(const Certificate& c, int digits = 15);  // pretty JSON
CertPtr certificate_from_json(const nlohmann::json& j);
CertPtr certificate_from_string(const std::string& text);

// human-readable derivation tree, one node per line
std::string render_certificate_tree(const Certificate& c, int digits = 6);

}  // namespace noether
