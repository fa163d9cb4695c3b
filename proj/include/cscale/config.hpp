#pragma once

// Experiment configuration: one JSON document, complex numbers as [re, im].
//
//   {
//     "potential": {"family": "gaussian", "c": [1, 0], "amplitude": [-1.2, 0]},
//     "grid": {"L": 20, "N": 1000, "scheme": "FD2"},
//     "angles": [0.1, 0.3]            or {"start": 0, "stop": 0.3, "count": 4},
//     "phi_probe": 0.05,
//     "gamma": 1.5, "d": 1,
//     "L_policy": {"kind": "Semiclassical"},
//     "theorems": ["FLLSpp", {"id": "FLLS", "kappa": 1.0}, {"id": "Resonance", "phi": 0.6}],
//     "tolerances": {"tol_eig": 1e-8, "tol_match": 1e-4, ...},
//     "norms": {"p": [2], "angles": [0, 0.1]},
//     "lhs": "grid" | "richardson",
//     "output": "out"
//   }
//
// "potentials": [{...,"name": "..."}] may replace "potential".

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cscale/lt_bounds.hpp"
#include "cscale/operator.hpp"
#include "cscale/potential.hpp"

namespace cscale {

struct PotentialSpec {
  std::string name;
  Potential potential;
};

struct ExperimentConfig {
  std::vector<PotentialSpec> potentials;
  double L = 0.0;
  int N = 0;
  Scheme scheme = Scheme::FD2;
  std::vector<double> angles;
  std::optional<double> phi_probe;
  double gamma = 1.5;
  int d = 1;
  LPolicy policy = LPolicy::Semiclassical;
  double policy_value = 1.0;
  std::vector<std::pair<Theorem, BoundParams>> theorems;
  VerifyOptions verify{};
  std::vector<double> norm_p;
  std::vector<double> norm_angles;
  std::string output = "out";
  /// FNV-1a of the canonical serialisation of the input document.
  std::string hash;

  Grid grid() const { return Grid(L, N); }
  LTConstants constants() const { return LTConstants(gamma, d, policy, policy_value); }
};

inline std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = digits[h & 0xf];
  return out;
}

namespace detail {

using nlohmann::json;

[[noreturn]] inline void bad(const std::string& field, const std::string& why) {
  fail(ErrorKind::InvalidConfig, field + ": " + why);
}

inline const json& need(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) bad(path + key, "required");
  return j.at(key);
}

inline double number(const json& j, const std::string& field) {
  if (!j.is_number()) bad(field, "expected a number");
  return j.get<double>();
}

inline double number_or(const json& j, const std::string& key, double fallback, const std::string& path) {
  return j.is_object() && j.contains(key) ? number(j.at(key), path + key) : fallback;
}

inline cplx complex_value(const json& j, const std::string& field) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    bad(field, "expected [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline cplx complex_or(const json& j, const std::string& key, cplx fallback, const std::string& path) {
  return j.contains(key) ? complex_value(j.at(key), path + key) : fallback;
}

inline std::vector<double> number_list(const json& j, const std::string& field) {
  std::vector<double> out;
  if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], field + "[" + std::to_string(i) + "]"));
    return out;
  }
  if (j.is_object()) {
    const double a = number(need(j, "start", field + "."), field + ".start");
    const double b = number(need(j, "stop", field + "."), field + ".stop");
    const double n = number(need(j, "count", field + "."), field + ".count");
    if (!(n >= 1.0) || n != static_cast<int>(n)) bad(field + ".count", "expected a positive integer");
    const int count = static_cast<int>(n);
    for (int k = 0; k < count; ++k) out.push_back(count == 1 ? a : a + (b - a) * k / (count - 1));
    return out;
  }
  bad(field, "expected a list or {start, stop, count}");
}

inline Potential parse_potential(const json& j, const std::string& path, double box_half_width) {
  const auto& fam = need(j, "family", path);
  if (!fam.is_string()) bad(path + "family", "expected a string");
  const std::string family = fam.get<std::string>();
  try {
    if (family == "gaussian")
      return Potential::gaussian(complex_or(j, "c", 1.0, path), complex_or(j, "amplitude", 1.0, path));
    if (family == "rational")
      return Potential::rational(complex_or(j, "c", 1.0, path), number(need(j, "s", path), path + "s"));
    if (family == "well")
      return Potential::finite_well(number(need(j, "depth", path), path + "depth"),
                                    number(need(j, "halfwidth", path), path + "halfwidth"));
    if (family == "free") return Potential::free();
    if (family == "gaussian_pair")
      return Potential::gaussian_pair(complex_or(j, "c", 1.0, path), number(need(j, "center", path), path + "center"),
                                      complex_or(j, "amplitude", 1.0, path));
    if (family == "sech2") {
      // a sech^2(x) sampled on the box; undilated use only.
      const double a = number_or(j, "amplitude", -2.0, path);
      const double n = number_or(j, "samples", 40001.0, path);
      if (!(n >= 2.0)) bad(path + "samples", "expected at least 2");
      return Potential::tabulate([a](double x) { return a / (std::cosh(x) * std::cosh(x)); }, -box_half_width,
                                 box_half_width, static_cast<std::size_t>(n), "sech2");
    }
    if (family == "tabulated") {
      const auto xs = number_list(need(j, "x", path), path + "x");
      const auto& vj = need(j, "v", path);
      if (!vj.is_array()) bad(path + "v", "expected a list");
      std::vector<cplx> vs;
      for (std::size_t i = 0; i < vj.size(); ++i) vs.push_back(complex_value(vj[i], path + "v[" + std::to_string(i) + "]"));
      return Potential::tabulated(xs, vs);
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::InvalidConfig) throw;
    bad(path + "family", e.what());
  }
  bad(path + "family", "unknown family '" + family + "'");
}

}  // namespace detail

/// Parses and validates a configuration document. Every failure is an
/// InvalidConfig error whose message starts with the offending field.
inline ExperimentConfig parse_config(const nlohmann::json& j) {
  using detail::bad;
  using detail::need;
  using detail::number;
  ExperimentConfig cfg;
  if (!j.is_object()) bad("<root>", "expected an object");
  cfg.hash = fnv1a_hex(j.dump());

  const auto& g = need(j, "grid", "");
  cfg.L = number(need(g, "L", "grid."), "grid.L");
  const double n = number(need(g, "N", "grid."), "grid.N");
  if (!(cfg.L > 0.0) || !std::isfinite(cfg.L)) bad("grid.L", "must be positive");
  if (n != static_cast<double>(static_cast<long>(n)) || n < 16 || n > 20000) bad("grid.N", "must be an integer in [16, 20000]");
  cfg.N = static_cast<int>(n);
  if (g.contains("scheme")) {
    const auto s = g.at("scheme");
    if (s == "FD2") cfg.scheme = Scheme::FD2;
    else if (s == "FD4") cfg.scheme = Scheme::FD4;
    else bad("grid.scheme", "expected FD2 or FD4");
  }

  if (j.contains("potentials")) {
    const auto& list = j.at("potentials");
    if (!list.is_array() || list.empty()) bad("potentials", "expected a non-empty list");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string path = "potentials[" + std::to_string(i) + "].";
      auto v = detail::parse_potential(list[i], path, cfg.L);
      std::string name = list[i].contains("name") ? list[i].at("name").get<std::string>() : v.id();
      cfg.potentials.push_back({name, std::move(v)});
    }
  } else {
    const auto& pj = need(j, "potential", "");
    auto v = detail::parse_potential(pj, "potential.", cfg.L);
    std::string name = pj.contains("name") ? pj.at("name").get<std::string>() : v.id();
    cfg.potentials.push_back({name, std::move(v)});
  }

  if (j.contains("angles")) cfg.angles = detail::number_list(j.at("angles"), "angles");
  if (j.contains("phi_probe")) cfg.phi_probe = number(j.at("phi_probe"), "phi_probe");

  cfg.gamma = detail::number_or(j, "gamma", 1.5, "");
  const double d = detail::number_or(j, "d", 1.0, "");
  if (d != static_cast<int>(d) || d < 1) bad("d", "must be a positive integer");
  cfg.d = static_cast<int>(d);
  if (j.contains("L_policy")) {
    const auto& lp = j.at("L_policy");
    const std::string kind = lp.is_string() ? lp.get<std::string>() : need(lp, "kind", "L_policy.").get<std::string>();
    if (kind == "Semiclassical") {
      cfg.policy = LPolicy::Semiclassical;
    } else if (kind == "SemiclassicalTimes") {
      cfg.policy = LPolicy::SemiclassicalTimes;
      cfg.policy_value = number(need(lp, "m", "L_policy."), "L_policy.m");
    } else if (kind == "UserSupplied") {
      cfg.policy = LPolicy::UserSupplied;
      cfg.policy_value = number(need(lp, "value", "L_policy."), "L_policy.value");
    } else {
      bad("L_policy.kind", "expected Semiclassical, SemiclassicalTimes or UserSupplied");
    }
  }
  try {
    (void)cfg.constants();
  } catch (const Error& e) {
    bad("gamma", e.what());
  }

  if (j.contains("theorems")) {
    const auto& list = j.at("theorems");
    if (!list.is_array()) bad("theorems", "expected a list");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string path = "theorems[" + std::to_string(i) + "]";
      const auto& item = list[i];
      BoundParams prm;
      std::string id;
      if (item.is_string()) {
        id = item.get<std::string>();
      } else if (item.is_object()) {
        id = need(item, "id", path + ".").get<std::string>();
        if (item.contains("kappa")) prm.kappa = number(item.at("kappa"), path + ".kappa");
        if (item.contains("phi")) prm.phi = number(item.at("phi"), path + ".phi");
      } else {
        bad(path, "expected a name or {id, kappa, phi}");
      }
      Theorem t;
      try {
        t = parse_theorem(id);
      } catch (const Error&) {
        bad(path + ".id", "unknown theorem '" + id + "'");
      }
      if (needs_kappa(t) && !(prm.kappa && *prm.kappa > 0.0)) bad(path + ".kappa", "required and positive for " + id);
      if (t == Theorem::Resonance && !(prm.phi && *prm.phi > 0.0 && *prm.phi < pi / 2.0))
        bad(path + ".phi", "required in (0, pi/2) for Resonance");
      cfg.theorems.emplace_back(t, prm);
    }
  }

  auto& vo = cfg.verify;
  if (j.contains("tolerances")) {
    const auto& t = j.at("tolerances");
    const std::string p = "tolerances.";
    vo.classify.eig.tol_eig = detail::number_or(t, "tol_eig", vo.classify.eig.tol_eig, p);
    vo.classify.eig.cluster_rel = detail::number_or(t, "cluster_rel", vo.classify.eig.cluster_rel, p);
    vo.classify.tol_match = detail::number_or(t, "tol_match", vo.classify.tol_match, p);
    vo.classify.partner_factor = detail::number_or(t, "partner_factor", vo.classify.partner_factor, p);
    vo.classify.ray_rel = detail::number_or(t, "ray_rel", vo.classify.ray_rel, p);
    vo.classify.ray_abs = detail::number_or(t, "ray_abs", vo.classify.ray_abs, p);
    vo.tol_report = detail::number_or(t, "tol_report", vo.tol_report, p);
    vo.tol_box = detail::number_or(t, "tol_box", vo.tol_box, p);
    vo.quad.rel_tol = detail::number_or(t, "quad_rel", vo.quad.rel_tol, p);
    for (const char* key : {"tol_eig", "cluster_rel", "tol_match", "partner_factor", "ray_rel", "tol_report", "tol_box", "quad_rel"})
      if (t.contains(key) && !(t.at(key).get<double>() > 0.0)) bad(p + key, "must be positive");
  }
  vo.classify.scheme = cfg.scheme;
  if (j.contains("box_check")) vo.box_check = j.at("box_check").get<bool>();
  if (j.contains("lhs")) {
    const auto mode = j.at("lhs");
    if (mode == "grid") vo.extrapolate = false;
    else if (mode == "richardson") vo.extrapolate = true;
    else bad("lhs", "expected grid or richardson");
  }
  if (j.contains("classify_phi_cap")) vo.phi_cap = number(j.at("classify_phi_cap"), "classify_phi_cap");

  if (j.contains("norms")) {
    const auto& nm = j.at("norms");
    if (nm.contains("p")) cfg.norm_p = detail::number_list(nm.at("p"), "norms.p");
    if (nm.contains("angles")) cfg.norm_angles = detail::number_list(nm.at("angles"), "norms.angles");
    for (double p : cfg.norm_p)
      if (!(p >= 1.0)) bad("norms.p", "every p must be >= 1");
  }
  if (cfg.norm_p.empty()) cfg.norm_p = {cfg.gamma + 0.5 * cfg.d};

  if (j.contains("output")) cfg.output = j.at("output").get<std::string>();
  return cfg;
}

inline ExperimentConfig parse_config_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::InvalidConfig, std::string("<document>: ") + e.what());
  }
  try {
    return parse_config(j);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::InvalidConfig, std::string("<document>: ") + e.what());
  }
}

}  // namespace cscale
