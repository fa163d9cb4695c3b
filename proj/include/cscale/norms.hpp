#pragma once

#include <cmath>
#include <vector>

#include "cscale/potential.hpp"
#include "cscale/quadrature.hpp"

namespace cscale {

/// Pointwise real parts taken of a complex potential before a norm.
enum class Part {
  AbsWhole,  // |f|
  ReMinus,   // (Re f)_-
  RePlus,    // (Re f)_+
  ImPlus,    // (Im f)_+
};

/// V_pm = (|V| pm V)/2 applied to the chosen component.
inline double negative_part(cplx f, Part mode) {
  switch (mode) {
    case Part::AbsWhole: return std::abs(f);
    case Part::ReMinus: return std::max(-f.real(), 0.0);
    case Part::RePlus: return std::max(f.real(), 0.0);
    case Part::ImPlus: return std::max(f.imag(), 0.0);
  }
  return 0.0;
}

/// What to integrate: part(phase * V(e^{i phi} x)).
struct NormQuery {
  ComplexAngle theta{};
  cplx phase{1.0, 0.0};
  Part part = Part::AbsWhole;
};

/// Integral of |part(phase * V_theta)|^p over the real line (the norm to the p-th power).
inline double lp_integral(const Potential& v, const NormQuery& q, double p, const QuadratureOptions& opt = {}) {
  if (!(p >= 1.0)) fail(ErrorKind::InvalidArgument, "p must be >= 1");
  if (!v.admits(q.theta.phi))
    fail(ErrorKind::AngleOutOfStrip, "phi = " + std::to_string(q.theta.phi) + " outside the strip of " + v.id());
  if (v.is_zero()) return 0.0;
  auto f = [&](double x) { return std::pow(negative_part(q.phase * v.dilated(q.theta, x), q.part), p); };
  // Every part is dominated by |V_theta|, so its tail bound applies.
  auto tail = [&](double X) { return v.tail_bound(q.theta, p, X); };
  const auto bp = v.breakpoints(q.theta);
  return integrate_real_line(f, tail, bp, v.length_scale(q.theta), opt).value;
}

/// ||V_theta||_{L^p(R)} by adaptive quadrature.
inline double lp_norm_quadrature(const Potential& v, ComplexAngle theta, double p, const QuadratureOptions& opt = {}) {
  return std::pow(lp_integral(v, NormQuery{theta}, p, opt), 1.0 / p);
}

struct ScanPoint {
  double phi = 0.0;
  double norm = 0.0;
  /// Sign of norm(phi_k) - norm(phi_{k-1}); 0 for the first point.
  int direction = 0;
};

inline std::vector<ScanPoint> norm_monotonicity_scan(const Potential& v, double p, const std::vector<double>& phi_grid,
                                                     const QuadratureOptions& opt = {}) {
  std::vector<ScanPoint> out;
  out.reserve(phi_grid.size());
  for (double phi : phi_grid) {
    ScanPoint pt{phi, lp_norm_quadrature(v, ComplexAngle{phi}, p, opt), 0};
    if (!out.empty()) {
      const double d = pt.norm - out.back().norm;
      pt.direction = (d > 0.0) - (d < 0.0);
    }
    out.push_back(pt);
  }
  return out;
}

/// Number of sign changes in the scan's direction sequence.
inline int direction_changes(const std::vector<ScanPoint>& scan) {
  int changes = 0;
  int last = 0;
  for (const auto& pt : scan) {
    if (pt.direction == 0) continue;
    if (last != 0 && pt.direction != last) ++changes;
    last = pt.direction;
  }
  return changes;
}

}  // namespace cscale
