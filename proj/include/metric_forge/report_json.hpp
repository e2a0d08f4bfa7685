#pragma once

// JSON encodings of reports and certificates. Objects use nlohmann::json's
// default std::map storage, so keys come out sorted and dumps are
// byte-stable for fixed inputs.

#include <string>

#include "json.hpp"
#include "metric_forge/axiom_report.hpp"
#include "metric_forge/b_action.hpp"
#include "metric_forge/chittenden.hpp"
#include "metric_forge/metrization.hpp"

namespace metric_forge {

inline constexpr int kReportSchema = 1;

inline void to_json(nlohmann::json& j, const Violation& v) {
  j = nlohmann::json{{"axiom", std::string(to_string(v.axiom))},
                     {"lhs", v.lhs},
                     {"rhs", v.rhs},
                     {"slack", v.slack}};
  if (!v.points.empty()) j["points"] = v.points;
  if (!v.coords.empty()) j["coords"] = v.coords;
  if (v.axiom == Axiom::uniform_regularity) j["epsilon"] = v.epsilon;
}

inline void to_json(nlohmann::json& j, const AxiomReport& r) {
  j = nlohmann::json{{"passed", r.passed()},
                     {"total_violations", r.total_violations},
                     {"checked", r.checked},
                     {"scope", r.scope},
                     {"violations", r.violations}};
}

inline void to_json(nlohmann::json& j, const ContinuityCertificate& c) {
  j = nlohmann::json{{"epsilon", c.epsilon},
                     {"delta", c.delta},
                     {"sup_observed", c.sup_observed},
                     {"grid_resolution", c.grid_resolution},
                     {"stable", c.stable},
                     {"evaluations", c.evaluations}};
}

inline void to_json(nlohmann::json& j, const RegularityModulus& m) {
  nlohmann::json table = nlohmann::json::array();
  for (const auto& e : m.table) table.push_back({{"epsilon", e.epsilon}, {"phi", e.phi}});
  j = nlohmann::json{{"kind", std::string(to_string(m.kind))}, {"table", table}};
  if (m.kind == ModulusKind::b_metric_closed_form) {
    j["parameters"] = {{"S", m.s}, {"formula", "eps / (2 S)"}};
  } else {
    j["parameters"] = {{"theta", m.theta_name},
                       {"formula", "delta / sqrt(2)"},
                       {"certificates", m.certificates}};
  }
}

inline void to_json(nlohmann::json& j, const ChittendenCertificate& c) {
  nlohmann::json witnesses = nlohmann::json::array();
  for (const auto* r : {&c.identity, &c.symmetry, &c.regularity}) {
    for (const auto& v : r->violations) witnesses.push_back(v);
  }
  j = nlohmann::json{
      {"schema", kReportSchema},
      {"scope", c.scope},
      {"passed", c.passed()},
      {"conditions",
       {{"i_identity", c.identity}, {"ii_symmetry", c.symmetry}, {"iii_uniform_regularity", c.regularity}}},
      {"epsilon_grid", c.epsilon_grid},
      {"modulus", c.modulus},
      {"witnesses", witnesses}};
}

inline void to_json(nlohmann::json& j, const Chain& c) {
  j = nlohmann::json{{"from", c.from}, {"to", c.to}, {"path", c.path}, {"length", c.length}};
}

/// MetrizationResult without the matrix itself, which goes to a CSV file.
inline nlohmann::json metrization_json(const MetrizationResult& r, const std::string& metric_csv_path) {
  nlohmann::json j{{"p", r.p},
                   {"S", r.s},
                   {"attempts", r.attempts},
                   {"distortion", {{"max", r.distortion.max}, {"min", r.distortion.min}}},
                   {"metric_csv_path", metric_csv_path}};
  if (!r.chains.empty()) j["chains"] = r.chains;
  return j;
}

}  // namespace metric_forge
