#pragma once

// Left- and right-hand sides of the Lieb-Thirring type eigenvalue estimates
// for complex potentials, and their verification against computed spectra.

#include <cmath>
#include <functional>
#include <future>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cscale/norms.hpp"
#include "cscale/region.hpp"
#include "cscale/spectrum.hpp"

namespace cscale {

enum class LPolicy { Semiclassical, SemiclassicalTimes, UserSupplied };

/// Semiclassical constant Gamma(g+1) / (2^d pi^{d/2} Gamma(g+d/2+1)).
inline double semiclassical_constant(double gamma, int d) {
  return std::exp(std::lgamma(gamma + 1.0) - std::lgamma(gamma + 0.5 * d + 1.0)) /
         (std::pow(2.0, d) * std::pow(pi, 0.5 * d));
}

class LTConstants {
 public:
  /// value is the multiplier m for SemiclassicalTimes and L itself for UserSupplied.
  LTConstants(double gamma, int d, LPolicy policy = LPolicy::Semiclassical, double value = 1.0)
      : gamma_(gamma), d_(d), policy_(policy), value_(value) {
    if (d < 1) fail(ErrorKind::InvalidArgument, "d must be >= 1");
    const bool ok = d == 1 ? gamma >= 0.5 : d == 2 ? gamma > 0.0 : gamma >= 0.0;
    if (!ok || !std::isfinite(gamma))
      fail(ErrorKind::InvalidArgument, "(gamma, d) = (" + std::to_string(gamma) + ", " + std::to_string(d) +
                                           ") is not an admissible Lieb-Thirring pair");
    if (policy == LPolicy::SemiclassicalTimes && !(value >= 1.0))
      fail(ErrorKind::InvalidArgument, "SemiclassicalTimes multiplier must be >= 1");
    if (policy == LPolicy::UserSupplied && !(value > 0.0))
      fail(ErrorKind::InvalidArgument, "user-supplied L must be positive");
  }

  double gamma() const noexcept { return gamma_; }
  int d() const noexcept { return d_; }
  LPolicy policy() const noexcept { return policy_; }
  /// Exponent gamma + d/2 of every norm.
  double p() const noexcept { return gamma_ + 0.5 * d_; }

  double L() const {
    switch (policy_) {
      case LPolicy::Semiclassical: return semiclassical_constant(gamma_, d_);
      case LPolicy::SemiclassicalTimes: return value_ * semiclassical_constant(gamma_, d_);
      case LPolicy::UserSupplied: return value_;
    }
    return 0.0;
  }
  /// C = 2^{1 + gamma/2 + d/4} L
  double C() const { return std::pow(2.0, 1.0 + gamma_ / 2.0 + d_ / 4.0) * L(); }

  std::string policy_name() const {
    switch (policy_) {
      case LPolicy::Semiclassical: return "Semiclassical";
      case LPolicy::SemiclassicalTimes: return "SemiclassicalTimes(" + std::to_string(value_) + ")";
      case LPolicy::UserSupplied: return "UserSupplied(" + std::to_string(value_) + ")";
    }
    return "?";
  }

 private:
  double gamma_;
  int d_;
  LPolicy policy_;
  double value_;
};

enum class Theorem {
  rLT,
  FLLS,
  FLLSprime,
  FLLSpp,
  So_upper,
  So_lower,
  So_all,
  Thm23_plus,
  Thm23_minus,
  QII,
  QIII,
  QI,
  QIV,
  RightHalf,
  AllA,
  Resonance,
  ImagAxis,
  Embedded,
};

inline const std::vector<Theorem>& all_theorems() {
  static const std::vector<Theorem> list{
      Theorem::rLT,        Theorem::FLLS,        Theorem::FLLSprime, Theorem::FLLSpp, Theorem::So_upper,
      Theorem::So_lower,   Theorem::So_all,      Theorem::Thm23_plus, Theorem::Thm23_minus, Theorem::QII,
      Theorem::QIII,       Theorem::QI,          Theorem::QIV,       Theorem::RightHalf, Theorem::AllA,
      Theorem::Resonance,  Theorem::ImagAxis,    Theorem::Embedded};
  return list;
}

inline std::string to_string(Theorem t) {
  switch (t) {
    case Theorem::rLT: return "rLT";
    case Theorem::FLLS: return "FLLS";
    case Theorem::FLLSprime: return "FLLSprime";
    case Theorem::FLLSpp: return "FLLSpp";
    case Theorem::So_upper: return "So_upper";
    case Theorem::So_lower: return "So_lower";
    case Theorem::So_all: return "So_all";
    case Theorem::Thm23_plus: return "Thm23_plus";
    case Theorem::Thm23_minus: return "Thm23_minus";
    case Theorem::QII: return "QII";
    case Theorem::QIII: return "QIII";
    case Theorem::QI: return "QI";
    case Theorem::QIV: return "QIV";
    case Theorem::RightHalf: return "RightHalf";
    case Theorem::AllA: return "AllA";
    case Theorem::Resonance: return "Resonance";
    case Theorem::ImagAxis: return "ImagAxis";
    case Theorem::Embedded: return "Embedded";
  }
  return "?";
}

inline Theorem parse_theorem(const std::string& name) {
  for (Theorem t : all_theorems())
    if (to_string(t) == name) return t;
  fail(ErrorKind::InvalidConfig, "unknown theorem '" + name + "'");
}

struct BoundParams {
  std::optional<double> kappa;
  std::optional<double> phi;
};

inline bool needs_kappa(Theorem t) {
  return t == Theorem::FLLS || t == Theorem::FLLSprime || t == Theorem::Thm23_plus || t == Theorem::Thm23_minus;
}

namespace detail {

inline double kappa_of(Theorem t, const BoundParams& prm) {
  if (!prm.kappa) fail(ErrorKind::KappaDomain, to_string(t) + " needs kappa");
  const double k = *prm.kappa;
  if (!(k > 0.0) || !std::isfinite(k)) fail(ErrorKind::KappaDomain, "kappa must be positive and finite");
  return k;
}

inline double phi_of(const BoundParams& prm) {
  if (!prm.phi) fail(ErrorKind::InvalidArgument, "Resonance needs phi");
  const double f = *prm.phi;
  if (!(f > 0.0 && f < pi / 2.0)) fail(ErrorKind::InvalidArgument, "Resonance needs phi in (0, pi/2)");
  return f;
}

}  // namespace detail

/// Lower bound on the analyticity half-width each estimate assumes.
inline double alpha_required(Theorem t, const BoundParams& prm = {}) {
  switch (t) {
    case Theorem::rLT:
    case Theorem::FLLS:
    case Theorem::FLLSprime:
    case Theorem::FLLSpp: return 0.0;
    case Theorem::So_upper:
    case Theorem::So_lower:
    case Theorem::So_all:
    case Theorem::ImagAxis: return pi / 4.0;
    case Theorem::Thm23_plus:
    case Theorem::Thm23_minus: return pi / 4.0 - 0.5 * std::atan(detail::kappa_of(t, prm));
    case Theorem::QII:
    case Theorem::QIII: return pi / 8.0;
    case Theorem::QI:
    case Theorem::QIV:
    case Theorem::RightHalf:
    case Theorem::AllA: return 3.0 * pi / 8.0;
    case Theorem::Resonance: return std::abs(1.5 * detail::phi_of(prm) - pi / 2.0);
    case Theorem::Embedded: return pi / 2.0;
  }
  return 0.0;
}

/// Returns the integral of |part(phase * V_theta)|^p, i.e. the norm to the p-th power.
using NormProvider = std::function<double(const NormQuery&)>;

/// Right-hand side assembled from a norm provider, formulas as printed.
inline double rhs_from_norms(Theorem t, const LTConstants& k, const BoundParams& prm, const NormProvider& norm) {
  if (t != Theorem::rLT && k.gamma() < 1.0)
    fail(ErrorKind::WrongRegime, "the complex estimates are stated for gamma >= 1");
  const double L = k.L();
  const double C = k.C();
  const double p = k.p();
  auto q = [](double phi, cplx phase, Part part) { return NormQuery{ComplexAngle{phi}, phase, part}; };
  auto e = [](double a) { return std::polar(1.0, a); };
  auto quadrant_13 = [&](int s) { return 2.0 * L * norm(q(s * 3.0 * pi / 8.0, e(s * 3.0 * pi / 4.0), Part::ReMinus)); };
  switch (t) {
    case Theorem::rLT: return L * norm(q(0.0, 1.0, Part::ReMinus));
    case Theorem::FLLS: return C * std::pow(1.0 + 2.0 / detail::kappa_of(t, prm), p) * norm(q(0.0, 1.0, Part::AbsWhole));
    case Theorem::FLLSprime: return (1.0 + detail::kappa_of(t, prm)) * L * norm(q(0.0, 1.0, Part::ReMinus));
    case Theorem::FLLSpp: return C * norm(q(0.0, 1.0, Part::AbsWhole));
    case Theorem::So_upper: return C * norm(q(pi / 4.0, 1.0, Part::AbsWhole));
    case Theorem::So_lower: return C * norm(q(-pi / 4.0, 1.0, Part::AbsWhole));
    case Theorem::So_all: return rhs_from_norms(Theorem::So_upper, k, prm, norm) + rhs_from_norms(Theorem::So_lower, k, prm, norm);
    case Theorem::Thm23_plus:
    case Theorem::Thm23_minus: {
      const double s = t == Theorem::Thm23_plus ? 1.0 : -1.0;
      const double kappa = detail::kappa_of(t, prm);
      const double a = std::atan(kappa);
      return (1.0 + kappa) * L * norm(q(s * (pi / 4.0 - 0.5 * a), e(s * (pi / 2.0 - a)), Part::ReMinus));
    }
    case Theorem::QII: return 2.0 * L * norm(q(pi / 8.0, e(pi / 4.0), Part::ReMinus));
    case Theorem::QIII: return 2.0 * L * norm(q(-pi / 8.0, e(-pi / 4.0), Part::ReMinus));
    case Theorem::QI: return quadrant_13(+1);
    case Theorem::QIV: return quadrant_13(-1);
    case Theorem::RightHalf: return quadrant_13(+1) + quadrant_13(-1);
    case Theorem::AllA: return rhs_from_norms(Theorem::FLLSpp, k, prm, norm) + rhs_from_norms(Theorem::RightHalf, k, prm, norm);
    case Theorem::Resonance: {
      const double phi = detail::phi_of(prm);
      return (1.0 + std::tan(phi)) * L * norm(q(1.5 * phi - pi / 2.0, e(phi - pi / 2.0), Part::ReMinus));
    }
    case Theorem::ImagAxis: return L * norm(q(pi / 4.0, 1.0, Part::ImPlus));
    case Theorem::Embedded: return L * norm(q(pi / 2.0, 1.0, Part::RePlus));
  }
  return 0.0;
}

/// Throws unless V carries the analyticity the estimate assumes.
inline void check_applicable(Theorem t, const Potential& v, const BoundParams& prm) {
  if (needs_kappa(t)) detail::kappa_of(t, prm);
  if (t == Theorem::rLT && !v.is_real()) fail(ErrorKind::WrongRegime, "rLT is stated for real potentials");
  const double need = alpha_required(t, prm);
  if (need > 0.0 && !(v.alpha() > need))
    fail(ErrorKind::InsufficientAlpha, to_string(t) + " needs alpha > " + std::to_string(need) + ", " + v.id() +
                                           " has alpha = " + std::to_string(v.alpha()));
}

inline bool applicable(Theorem t, const Potential& v, const BoundParams& prm) {
  try {
    check_applicable(t, v, prm);
    return true;
  } catch (const Error&) {
    return false;
  }
}

inline double rhs(Theorem t, const LTConstants& k, const Potential& v, const BoundParams& prm = {},
                  const QuadratureOptions& quad = {}) {
  check_applicable(t, v, prm);
  v.validate_for_gamma(k.gamma());
  return rhs_from_norms(t, k, prm, [&](const NormQuery& nq) { return lp_integral(v, nq, k.p(), quad); });
}

enum class Use { Isolated, Resonance, Embedded };

/// Sum of multiplicity * |lambda|^gamma over the chosen class inside R.
/// Resonances on [0, inf) are left out.
inline double lhs_sum(const SpectrumClassification& c, const Region& r, double gamma, Use use) {
  const auto& list = use == Use::Isolated ? c.isolated : use == Use::Resonance ? c.resonance : c.embedded_candidates;
  const Region nonneg = Region::non_negative_reals();
  double s = 0.0;
  for (const auto& pair : list) {
    if (!r.contains(pair.lambda)) continue;
    if (use == Use::Resonance && nonneg.contains(pair.lambda)) continue;
    s += pair.multiplicity * std::pow(std::abs(pair.lambda), gamma);
  }
  return s;
}

/// Region and eigenvalue class summed on the left of each estimate.
inline std::pair<Region, Use> lhs_domain(Theorem t, const BoundParams& prm) {
  switch (t) {
    case Theorem::rLT: return {Region::all(), Use::Isolated};
    case Theorem::FLLS: return {Region::complement(Region::sector_c(+1, detail::kappa_of(t, prm))), Use::Isolated};
    case Theorem::FLLSprime: return {Region::sector_c(-1, detail::kappa_of(t, prm)), Use::Isolated};
    case Theorem::FLLSpp: return {Region::left_half_closed(), Use::Isolated};
    case Theorem::So_upper: return {Region::union_of(Region::upper_half(), Region::negative_reals()), Use::Isolated};
    case Theorem::So_lower: return {Region::union_of(Region::lower_half(), Region::negative_reals()), Use::Isolated};
    case Theorem::So_all: return {Region::all(), Use::Isolated};
    case Theorem::Thm23_plus: return {Region::sector_u(+1, detail::kappa_of(t, prm)), Use::Isolated};
    case Theorem::Thm23_minus: return {Region::sector_u(-1, detail::kappa_of(t, prm)), Use::Isolated};
    case Theorem::QII: return {Region::quadrant(2), Use::Isolated};
    case Theorem::QIII: return {Region::quadrant(3), Use::Isolated};
    case Theorem::QI: return {Region::quadrant(1), Use::Isolated};
    case Theorem::QIV: return {Region::quadrant(4), Use::Isolated};
    case Theorem::RightHalf: return {Region::right_half_open(), Use::Isolated};
    case Theorem::AllA: return {Region::all(), Use::Isolated};
    case Theorem::Resonance: return {Region::resonance_sector(detail::phi_of(prm)), Use::Resonance};
    case Theorem::ImagAxis: return {Region::upper_imaginary_axis(), Use::Isolated};
    case Theorem::Embedded: return {Region::all(), Use::Embedded};
  }
  return {Region::all(), Use::Isolated};
}

struct BoundReport {
  Theorem theorem = Theorem::rLT;
  std::string potential_id;
  double gamma = 0.0;
  int d = 1;
  std::string L_policy;
  double L = 0.0;
  double C = 0.0;
  std::optional<double> kappa;
  std::optional<double> phi;
  std::string region;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  bool satisfied = false;
  double alpha_required = 0.0;
  /// Eigenvalues counted on the left.
  std::vector<EigenPair> contributors;
  /// Dilation angle and probe used to classify.
  double phi_class = 0.0;
  double phi_probe = 0.0;
  double max_residual = 0.0;
  /// Doubling the box (L -> 2L, N -> 2N+1) kept every contributor within tol_box.
  std::optional<bool> box_converged;
  double box_shift = 0.0;
  /// Set when lhs uses eigenvalues extrapolated to h -> 0; lhs_raw keeps the grid value.
  bool extrapolated = false;
  double lhs_raw = 0.0;
};

struct VerifyOptions {
  ClassifyOptions classify{};
  QuadratureOptions quad{};
  double tol_report = 1e-6;
  /// Classification angle as a fraction of alpha, capped at phi_cap.
  double phi_fraction = 0.6;
  double phi_cap = 0.5;
  /// Probe angle as a fraction of the classification angle.
  double probe_fraction = 0.5;
  bool box_check = true;
  double tol_box = 1e-4;
  /// Richardson-extrapolate contributing eigenvalues from h and h/2 (N -> 2N+1).
  bool extrapolate = false;
};

/// Everything the left-hand sides need for one potential on one grid.
struct ClassifiedSpectra {
  SpectrumClassification base;
  std::optional<SpectrumClassification> base_box;
  /// Keyed by the Resonance angle phi.
  std::map<double, SpectrumClassification> resonance;
  std::map<double, SpectrumClassification> resonance_box;
  /// Same classifications on the grid with half the spacing.
  std::optional<SpectrumClassification> base_fine;
  std::map<double, SpectrumClassification> resonance_fine;
};

namespace detail {

inline double classification_angle(const Potential& v, const VerifyOptions& opt) {
  const double a = v.alpha();
  return std::min(opt.phi_cap, opt.phi_fraction * a);
}

inline SpectrumClassification base_classification(const Potential& v, const Grid& g, const VerifyOptions& opt) {
  if (v.alpha() > 0.0) {
    const double phi = classification_angle(v, opt);
    return classify_two_sided(v, g, phi, opt.probe_fraction * phi, opt.classify);
  }
  return classify_undilated(v, g, opt.classify);
}

inline Grid doubled(const Grid& g) { return Grid(2.0 * g.L(), 2 * g.N() + 1); }
inline Grid refined(const Grid& g) { return Grid(g.L(), 2 * g.N() + 1); }

inline const std::vector<EigenPair>& pool(const SpectrumClassification& c, Use use) {
  return use == Use::Isolated ? c.isolated : use == Use::Resonance ? c.resonance : c.embedded_candidates;
}

inline double nearest_distance(const std::vector<EigenPair>& list, cplx z, int* index = nullptr) {
  double best = std::numeric_limits<double>::infinity();
  for (int j = 0; j < static_cast<int>(list.size()); ++j) {
    const double d = std::abs(list[j].lambda - z);
    if (d < best) {
      best = d;
      if (index) *index = j;
    }
  }
  return best;
}

}  // namespace detail

/// Classifications needed by the listed theorems, solved once and shared.
inline ClassifiedSpectra classify_for(const std::vector<std::pair<Theorem, BoundParams>>& jobs, const Potential& v,
                                      const Grid& g, const VerifyOptions& opt) {
  ClassifiedSpectra out;
  out.base = detail::base_classification(v, g, opt);
  if (opt.box_check) out.base_box = detail::base_classification(v, detail::doubled(g), opt);
  if (opt.extrapolate) out.base_fine = detail::base_classification(v, detail::refined(g), opt);
  for (const auto& [t, prm] : jobs) {
    if (t != Theorem::Resonance) continue;
    const double phi = detail::phi_of(prm);
    if (out.resonance.count(phi)) continue;
    out.resonance.emplace(phi, classify(v, g, phi, opt.probe_fraction * phi, opt.classify));
    if (opt.box_check)
      out.resonance_box.emplace(phi, classify(v, detail::doubled(g), phi, opt.probe_fraction * phi, opt.classify));
    if (opt.extrapolate)
      out.resonance_fine.emplace(phi, classify(v, detail::refined(g), phi, opt.probe_fraction * phi, opt.classify));
  }
  return out;
}

/// Report for one estimate given precomputed classifications.
inline BoundReport verify_with(Theorem t, const Potential& v, const LTConstants& k, const BoundParams& prm,
                               const ClassifiedSpectra& spectra, const VerifyOptions& opt = {}) {
  check_applicable(t, v, prm);
  BoundReport rep;
  rep.theorem = t;
  rep.potential_id = v.id();
  rep.gamma = k.gamma();
  rep.d = k.d();
  rep.L_policy = k.policy_name();
  rep.L = k.L();
  rep.C = k.C();
  rep.kappa = prm.kappa;
  rep.phi = prm.phi;
  rep.alpha_required = alpha_required(t, prm);

  const auto [region, use] = lhs_domain(t, prm);
  rep.region = region.to_string();
  const SpectrumClassification* cls = &spectra.base;
  const SpectrumClassification* box = spectra.base_box ? &*spectra.base_box : nullptr;
  const SpectrumClassification* fine = spectra.base_fine ? &*spectra.base_fine : nullptr;
  if (t == Theorem::Resonance) {
    const double phi = detail::phi_of(prm);
    auto find = [phi](const std::map<double, SpectrumClassification>& m) {
      const auto it = m.find(phi);
      return it == m.end() ? nullptr : &it->second;
    };
    cls = find(spectra.resonance);
    if (!cls) fail(ErrorKind::InvalidArgument, "no classification at the Resonance angle");
    box = find(spectra.resonance_box);
    fine = find(spectra.resonance_fine);
  }
  rep.phi_class = cls->phi;
  rep.phi_probe = cls->phi_probe;
  rep.max_residual = cls->max_residual;
  rep.lhs = lhs_sum(*cls, region, k.gamma(), use);
  rep.lhs_raw = rep.lhs;

  for (const auto& pair : detail::pool(*cls, use))
    if (region.contains(pair.lambda) && !(use == Use::Resonance && Region::non_negative_reals().contains(pair.lambda)))
      rep.contributors.push_back(pair);
  for (const auto& pair : rep.contributors)
    for (cplx z : cls->ambiguous)
      if (std::abs(z - pair.lambda) <= 2.0 * opt.classify.tol_match)
        fail(ErrorKind::ClassificationUnstable,
             to_string(t) + ": contributing eigenvalue (" + std::to_string(pair.lambda.real()) + ", " +
                 std::to_string(pair.lambda.imag()) + ") has an ambiguous match");

  if (use == Use::Isolated)
    for (cplx w : cls->unresolved)
      if (region.contains(w))
        fail(ErrorKind::ClassificationUnstable,
             to_string(t) + ": eigenvalue (" + std::to_string(w.real()) + ", " + std::to_string(w.imag()) +
                 ") moves more than tol_match under dilation; refine the grid (N) or raise tol_match");

  if (box) {
    double shift = 0.0;
    for (const auto& pair : rep.contributors)
      shift = std::max(shift, detail::nearest_distance(detail::pool(*box, use), pair.lambda));
    rep.box_shift = shift;
    rep.box_converged = shift <= opt.tol_box;
  }

  if (fine) {
    // O(h^2) error: lambda(0) ~ (4 lambda(h/2) - lambda(h)) / 3.
    double sum = 0.0;
    for (auto& pair : rep.contributors) {
      int j = -1;
      const double d = detail::nearest_distance(detail::pool(*fine, use), pair.lambda, &j);
      if (j < 0 || d > 1e-2 * (1.0 + std::abs(pair.lambda)))
        fail(ErrorKind::ClassificationUnstable, to_string(t) + ": contributing eigenvalue has no partner on the refined grid");
      pair.lambda = (4.0 * detail::pool(*fine, use)[j].lambda - pair.lambda) / 3.0;
      sum += pair.multiplicity * std::pow(std::abs(pair.lambda), k.gamma());
    }
    rep.lhs = sum;
    rep.extrapolated = true;
  }

  rep.rhs = rhs(t, k, v, prm, opt.quad);
  rep.ratio = rep.rhs > 0.0 ? rep.lhs / rep.rhs : (rep.lhs > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
  rep.satisfied = rep.lhs <= rep.rhs * (1.0 + opt.tol_report);
  return rep;
}

/// Classifies V on the grid and reports one estimate.
inline BoundReport verify(Theorem t, const Potential& v, const Grid& g, const LTConstants& k, const BoundParams& prm = {},
                          const VerifyOptions& opt = {}) {
  check_applicable(t, v, prm);
  const auto spectra = classify_for({{t, prm}}, v, g, opt);
  return verify_with(t, v, k, prm, spectra, opt);
}

/// Reports for several estimates on one potential, sharing the eigensolves.
/// Estimates V does not satisfy the hypotheses of are skipped when skip_inapplicable.
inline std::vector<BoundReport> verify_suite(const std::vector<std::pair<Theorem, BoundParams>>& jobs, const Potential& v,
                                             const Grid& g, const LTConstants& k, const VerifyOptions& opt = {},
                                             bool skip_inapplicable = true) {
  std::vector<std::pair<Theorem, BoundParams>> todo;
  for (const auto& job : jobs) {
    if (skip_inapplicable && !applicable(job.first, v, job.second)) continue;
    todo.push_back(job);
  }
  if (todo.empty()) return {};
  const auto spectra = classify_for(todo, v, g, opt);
  std::vector<BoundReport> out(todo.size());
  if (opt.classify.threads <= 1) {
    for (std::size_t i = 0; i < todo.size(); ++i) out[i] = verify_with(todo[i].first, v, k, todo[i].second, spectra, opt);
    return out;
  }
  std::vector<std::future<BoundReport>> futs;
  for (const auto& [t, prm] : todo)
    futs.push_back(std::async(std::launch::async, [&, t = t, prm = prm] { return verify_with(t, v, k, prm, spectra, opt); }));
  for (std::size_t i = 0; i < futs.size(); ++i) out[i] = futs[i].get();
  return out;
}

}  // namespace cscale
