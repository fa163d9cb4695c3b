#pragma once

// Deterministic text outputs: CSV with 17 significant digits and a header
// comment carrying the tool version and config hash, plus JSON reports.

#include <fmt/format.h>

#include <algorithm>
#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cscale/lt_bounds.hpp"
#include "cscale/spectrum.hpp"

namespace cscale {

inline constexpr const char* tool_version = "0.1.0";

/// Shortest text that round-trips every double: 17 significant digits, no locale.
inline std::string num(double x) { return fmt::format("{:.17g}", x); }

class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::string& config_hash, const std::vector<std::string>& columns)
      : os_(path) {
    if (!os_) fail(ErrorKind::InvalidArgument, "cannot write " + path);
    os_ << "# cscale " << tool_version << " config=" << config_hash << '\n';
    row(columns);
  }

  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os_ << (i ? "," : "") << cells[i];
    os_ << '\n';
  }

 private:
  std::ofstream os_;
};

struct ClassRow {
  double phi;
  cplx lambda;
  std::string cls;
  int multiplicity;
  double residual;
};

/// Rows of one classification ordered by (phi, Re lambda, Im lambda).
inline std::vector<ClassRow> classification_rows(const SpectrumClassification& c) {
  std::vector<ClassRow> rows;
  auto add = [&](const std::vector<EigenPair>& list, const char* name) {
    for (const auto& p : list) rows.push_back({c.phi, p.lambda, name, p.multiplicity, p.residual});
  };
  add(c.isolated, "isolated");
  add(c.resonance, "resonance");
  add(c.continuum, "continuum");
  add(c.embedded_candidates, "embedded_candidate");
  add(c.spurious, "spurious");
  std::sort(rows.begin(), rows.end(), [](const ClassRow& a, const ClassRow& b) {
    if (a.phi != b.phi) return a.phi < b.phi;
    if (a.lambda.real() != b.lambda.real()) return a.lambda.real() < b.lambda.real();
    if (a.lambda.imag() != b.lambda.imag()) return a.lambda.imag() < b.lambda.imag();
    return a.cls < b.cls;
  });
  return rows;
}

inline nlohmann::json to_json(const std::vector<EigenPair>& eigs) {
  auto arr = nlohmann::json::array();
  for (const auto& p : eigs)
    arr.push_back({{"re", p.lambda.real()}, {"im", p.lambda.imag()}, {"multiplicity", p.multiplicity}, {"residual", p.residual}});
  return arr;
}

inline nlohmann::json to_json(const SpectrumClassification& c) {
  return {{"phi", c.phi},
          {"phi_probe", c.phi_probe},
          {"isolated", to_json(c.isolated)},
          {"resonance", to_json(c.resonance)},
          {"embedded_candidates", to_json(c.embedded_candidates)},
          {"continuum_count", c.continuum.size()},
          {"spurious", to_json(c.spurious)},
          {"ambiguous_count", c.ambiguous.size()},
          {"unresolved_count", c.unresolved.size()},
          {"max_drift", c.max_drift},
          {"max_residual", c.max_residual}};
}

inline nlohmann::json to_json(const BoundReport& r) {
  nlohmann::json j{{"theorem_id", to_string(r.theorem)},
                   {"potential", r.potential_id},
                   {"gamma", r.gamma},
                   {"d", r.d},
                   {"L_policy", r.L_policy},
                   {"L", r.L},
                   {"C", r.C},
                   {"region", r.region},
                   {"lhs", r.lhs},
                   {"rhs", r.rhs},
                   {"ratio", r.ratio},
                   {"satisfied", r.satisfied},
                   {"alpha_required", r.alpha_required},
                   {"phi_class", r.phi_class},
                   {"phi_probe", r.phi_probe},
                   {"max_residual", r.max_residual},
                   {"contributors", to_json(r.contributors)}};
  j["kappa"] = r.kappa ? nlohmann::json(*r.kappa) : nlohmann::json(nullptr);
  j["phi"] = r.phi ? nlohmann::json(*r.phi) : nlohmann::json(nullptr);
  j["box_converged"] = r.box_converged ? nlohmann::json(*r.box_converged) : nlohmann::json(nullptr);
  j["box_shift"] = r.box_shift;
  j["extrapolated"] = r.extrapolated;
  j["lhs_raw"] = r.lhs_raw;
  return j;
}

inline std::vector<std::string> report_columns() {
  return {"potential", "theorem_id", "gamma", "d", "L_policy", "kappa", "phi", "lhs", "rhs", "ratio", "satisfied",
          "alpha_required", "contributors", "box_converged"};
}

inline std::vector<std::string> report_row(const std::string& name, const BoundReport& r) {
  return {name,
          to_string(r.theorem),
          num(r.gamma),
          std::to_string(r.d),
          r.L_policy,
          r.kappa ? num(*r.kappa) : "",
          r.phi ? num(*r.phi) : "",
          num(r.lhs),
          num(r.rhs),
          num(r.ratio),
          r.satisfied ? "true" : "false",
          num(r.alpha_required),
          std::to_string(r.contributors.size()),
          r.box_converged ? (*r.box_converged ? "true" : "false") : ""};
}

inline void write_json(const std::string& path, const nlohmann::json& j, const std::string& config_hash) {
  std::ofstream os(path);
  if (!os) fail(ErrorKind::InvalidArgument, "cannot write " + path);
  nlohmann::json doc{{"tool", "cscale"}, {"version", tool_version}, {"config_hash", config_hash}, {"data", j}};
  os << doc.dump(2) << '\n';
}

}  // namespace cscale
