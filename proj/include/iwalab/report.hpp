#pragma once

#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "iwalab/growth.hpp"
#include "iwalab/quadratic.hpp"
#include "iwalab/tower.hpp"

#include <json.hpp>

namespace iwalab {

using nlohmann::json;

inline constexpr const char* kReportSchema = "iwasawa-lab/report-v1";

enum class HypStatus { Pass, Fail, Asserted };

inline const char* to_string(HypStatus s) {
  switch (s) {
    case HypStatus::Pass: return "pass";
    case HypStatus::Fail: return "fail";
    case HypStatus::Asserted: return "asserted";
  }
  return "?";
}

struct HypothesisItem {
  std::string name;
  HypStatus status = HypStatus::Pass;
  std::string citation;  // nonempty for asserted items
  std::string detail;
};

/// A numeric (or structural) claim with provenance.
struct Quantity {
  json value;
  std::string provenance;  // "computed" or "paper-asserted"
  std::string citation;    // set when paper-asserted
};

struct ScenarioReport {
  std::string scenario_id;
  json inputs = json::object();
  std::vector<HypothesisItem> hypotheses;
  std::map<std::string, Quantity> quantities;
  std::vector<std::string> conclusions;
  std::vector<std::string> conditional_on;  // citations the conclusions rely on
  unsigned precision = kDefaultPrecision;
  unsigned long long seed = 0;
  int exit_code = 0;
  std::string error;  // set on hard failure

  void pass(std::string name, std::string detail = "") {
    hypotheses.push_back({std::move(name), HypStatus::Pass, "", std::move(detail)});
  }
  void fail(std::string name, std::string detail = "") {
    hypotheses.push_back({std::move(name), HypStatus::Fail, "", std::move(detail)});
    exit_code = 2;
  }
  void asserted(std::string name, std::string citation, std::string detail = "") {
    conditional_on.push_back(citation);
    hypotheses.push_back(
        {std::move(name), HypStatus::Asserted, std::move(citation), std::move(detail)});
  }
  void computed(const std::string& key, json value) {
    quantities[key] = Quantity{std::move(value), "computed", ""};
  }
  void paper_asserted(const std::string& key, json value, std::string citation) {
    quantities[key] = Quantity{std::move(value), "paper-asserted", std::move(citation)};
  }
  void conclude(std::string text) { conclusions.push_back(std::move(text)); }
  bool any_failed() const {
    for (const auto& h : hypotheses)
      if (h.status == HypStatus::Fail) return true;
    return false;
  }
  // A report with a failed hypothesis carries no conclusions.
  void finalize() {
    if (any_failed()) {
      conclusions.clear();
      if (exit_code == 0) exit_code = 2;
    }
  }
};

// --- JSON serialization -----------------------------------------------------

inline json to_json(const LambdaPoly& f) {
  json coeffs = json::array();
  for (const BigInt& r : f.residues()) coeffs.push_back(r.str());
  return json{{"p", f.prime()}, {"N", f.precision()}, {"coeffs", coeffs}};
}

inline json to_json(const ElemTorsionModule& m) {
  json lambda_parts = json::array();
  for (const auto& f : m.lambda_components()) lambda_parts.push_back(to_json(f));
  return json{{"p", m.prime()},
              {"N", m.precision()},
              {"mu_exponents", m.mu_exponents()},
              {"lambda_components", lambda_parts}};
}

inline json to_json(const GrowthReport& g) {
  json rows = json::array();
  for (const auto& [n, e] : g.rows) rows.push_back(json{{"n", n}, {"exponent", e}});
  return json{{"lambda", g.fitted_lambda}, {"mu", g.fitted_mu},
              {"nu", g.fitted_nu},         {"n_stab", g.n_stab},
              {"base_level", g.base_level}, {"rows", rows}};
}

inline json to_json(const TowerModel& model) {
  json comps = json::array();
  for (const auto& c : model.components()) {
    json jc{{"alpha", to_json(c.alpha)}};
    if (c.beta_is_p_power)
      jc["beta_p_exponent"] = c.beta_exponent;
    else
      jc["beta"] = to_json(c.beta_poly);
    comps.push_back(jc);
  }
  json j{{"p", model.prime()},
         {"N", model.precision()},
         {"components", comps},
         {"r_free", model.r_free()},
         {"e1", model.e1()},
         {"e3", model.e3()}};
  json gamma = json::array();
  for (const auto& w : model.gamma_module().lambda_components())
    gamma.push_back(to_json(w));
  j["gamma_components"] = gamma;
  if (model.delta().degree() > 0) j["delta"] = to_json(model.delta());
  return j;
}

inline json to_json(const TowerInvariants& inv) {
  return json{{"lambda1", inv.lambda1}, {"mu1", inv.mu1},
              {"lambda2", inv.lambda2}, {"nu1", inv.nu1},
              {"m0", inv.m0},           {"nu", inv.nu},
              {"n0", inv.n0}};
}

inline json to_json(const CertifiedInvariants& cert) {
  json table = json::array();
  for (const auto& row : cert.table)
    table.push_back(json{{"m", row.m},
                         {"N", row.N},
                         {"exponent", row.exponent},
                         {"predicted", row.predicted}});
  json j = to_json(cert.invariants);
  j["table"] = table;
  return j;
}

inline json to_json(const FormClassGroup& g) {
  return json{{"D", g.D},
              {"class_number", g.class_number},
              {"invariant_factors", g.invariant_factors},
              {"two_sylow", g.two_sylow}};
}

inline json to_json(const ScenarioReport& rep) {
  json hyp = json::array();
  for (const auto& h : rep.hypotheses) {
    json jh{{"name", h.name}, {"status", to_string(h.status)}};
    if (!h.citation.empty()) jh["citation"] = h.citation;
    if (!h.detail.empty()) jh["detail"] = h.detail;
    hyp.push_back(jh);
  }
  json quant = json::object();
  for (const auto& [key, q] : rep.quantities) {
    json jq{{"value", q.value}, {"provenance", q.provenance}};
    if (!q.citation.empty()) jq["citation"] = q.citation;
    quant[key] = jq;
  }
  json j{{"schema", kReportSchema},
         {"scenario", rep.scenario_id},
         {"inputs", rep.inputs},
         {"hypotheses", hyp},
         {"quantities", quant},
         {"conclusions", rep.conclusions},
         {"conditional_on", rep.conditional_on},
         {"precision", rep.precision},
         {"seed", rep.seed},
         {"exit_code", rep.exit_code}};
  if (!rep.error.empty()) j["error"] = rep.error;
  return j;
}

inline std::string render_json(const ScenarioReport& rep) {
  return to_json(rep).dump(2) + "\n";
}

inline std::string render_text(const ScenarioReport& rep) {
  std::string out;
  out += "scenario: " + rep.scenario_id + "\n";
  out += "inputs: " + rep.inputs.dump() + "\n";
  out += "precision: " + std::to_string(rep.precision) +
         "  seed: " + std::to_string(rep.seed) + "\n";
  out += "hypotheses:\n";
  for (const auto& h : rep.hypotheses) {
    out += "  [" + std::string(to_string(h.status)) + "] " + h.name;
    if (!h.citation.empty()) out += "  (" + h.citation + ")";
    if (!h.detail.empty()) out += "  -- " + h.detail;
    out += "\n";
  }
  out += "quantities:\n";
  for (const auto& [key, q] : rep.quantities) {
    out += "  " + key + " = " + q.value.dump() + "  [" + q.provenance;
    if (!q.citation.empty()) out += ": " + q.citation;
    out += "]\n";
  }
  out += "conclusions:\n";
  for (const auto& c : rep.conclusions) out += "  - " + c + "\n";
  if (!rep.conditional_on.empty()) {
    out += "conditional on:\n";
    for (const auto& c : rep.conditional_on) out += "  - " + c + "\n";
  }
  if (!rep.error.empty()) out += "error: " + rep.error + "\n";
  out += "exit: " + std::to_string(rep.exit_code) + "\n";
  return out;
}

inline void emit_report(const ScenarioReport& rep, const std::string& path,
                        const std::string& format) {
  std::string body;
  if (format == "json")
    body = render_json(rep);
  else if (format == "text")
    body = render_text(rep);
  else
    throw ConfigError("emit_report: format must be json or text");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("emit_report: cannot open " + path);
  out << body;
  if (!out) throw Error("emit_report: write failed for " + path);
}

}  // namespace iwalab
