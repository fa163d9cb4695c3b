#pragma once

// Spectra of H(i phi) across angles: rotation identities, the
// isolated / resonance / continuum split, and eigenvalue paths.

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numeric>
#include <string>
#include <tuple>
#include <vector>

#include "cscale/eigensolver.hpp"
#include "cscale/operator.hpp"
#include "cscale/potential.hpp"
#include "cscale/region.hpp"

namespace cscale {

struct ClassifyOptions {
  Scheme scheme = Scheme::FD2;
  EigenOptions eig{};
  double tol_match = 1e-4;
  /// Isolated eigenvalues may drift this many tol_match from their undilated
  /// value: the dilated potential is resolved less well as phi grows.
  double partner_factor = 10.0;
  /// tol_ray(lambda) = ray_rel * |lambda| + ray_abs
  double ray_rel = 0.05;
  double ray_abs = 0.01;
  int threads = 1;

  double tol_ray(cplx z) const { return ray_rel * std::abs(z) + ray_abs; }
};

/// Multiplies each eigenvalue by e^{2 i phi}.
inline std::vector<EigenPair> rotate_spectrum(std::vector<EigenPair> eigs, double phi) {
  const cplx r = std::polar(1.0, 2.0 * phi);
  for (auto& p : eigs) p.lambda *= r;
  return eigs;
}

inline std::vector<cplx> lambdas(const std::vector<EigenPair>& eigs) {
  std::vector<cplx> out;
  out.reserve(eigs.size());
  for (const auto& p : eigs) out.push_back(p.lambda);
  return out;
}

/// Greedy nearest-pair assignment: all pairs sorted by distance, taken while
/// both ends are free. Returns match[i] = index into b, or -1.
inline std::vector<int> greedy_match(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  std::vector<int> match(a.size(), -1);
  std::vector<char> taken(b.size(), 0);
  std::size_t left = std::min(a.size(), b.size());
  // Candidate lists hold each point's few nearest partners; whoever is still
  // unmatched after a round widens to every free partner.
  std::size_t k = 8;
  while (left > 0) {
    std::vector<std::tuple<double, int, int>> pairs;
    std::vector<std::pair<double, int>> row;
    for (int i = 0; i < static_cast<int>(a.size()); ++i) {
      if (match[i] >= 0) continue;
      row.clear();
      for (int j = 0; j < static_cast<int>(b.size()); ++j)
        if (!taken[j]) row.emplace_back(std::abs(a[i] - b[j]), j);
      const std::size_t keep = std::min(k, row.size());
      std::partial_sort(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(keep), row.end());
      for (std::size_t r = 0; r < keep; ++r) pairs.emplace_back(row[r].first, i, row[r].second);
    }
    std::sort(pairs.begin(), pairs.end());
    for (const auto& [d, i, j] : pairs) {
      if (match[i] >= 0 || taken[j]) continue;
      match[i] = j;
      taken[j] = 1;
      --left;
    }
    k = b.size();
  }
  return match;
}

/// Largest distance in the greedy pairing of two spectra; +inf when the
/// multisets differ in size.
inline double multiset_distance(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  const auto m = greedy_match(a, b);
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[m[i]]));
  return worst;
}

/// Eigenvalues of the Full form at each angle, solved concurrently.
/// Output order follows phis regardless of completion order.
inline std::vector<std::vector<EigenPair>> spectra_at(const Potential& v, const Grid& g, const std::vector<double>& phis,
                                                      const ClassifyOptions& opt) {
  auto solve = [&](double phi) {
    const auto hm = assemble(g, v, ComplexAngle{phi}, Form::Full, opt.scheme);
    auto eigs = eigenvalues(hm, opt.eig);
    const double r = max_residual(eigs);
    if (r > opt.eig.tol_eig)
      fail(ErrorKind::ToleranceNotMet,
           "eigen residual " + std::to_string(r) + " exceeds tol_eig at phi = " + std::to_string(phi));
    return eigs;
  };
  std::vector<std::vector<EigenPair>> out(phis.size());
  const std::size_t width = static_cast<std::size_t>(std::max(1, opt.threads));
  if (width == 1) {
    for (std::size_t k = 0; k < phis.size(); ++k) out[k] = solve(phis[k]);
    return out;
  }
  for (std::size_t start = 0; start < phis.size(); start += width) {
    std::vector<std::future<std::vector<EigenPair>>> jobs;
    const std::size_t stop = std::min(phis.size(), start + width);
    for (std::size_t k = start; k < stop; ++k) jobs.push_back(std::async(std::launch::async, solve, phis[k]));
    for (std::size_t k = start; k < stop; ++k) out[k] = jobs[k - start].get();
  }
  return out;
}

struct SpectrumClassification {
  double phi = 0.0;
  double phi_probe = 0.0;
  std::vector<EigenPair> isolated;
  std::vector<EigenPair> resonance;
  std::vector<EigenPair> continuum;
  std::vector<EigenPair> embedded_candidates;
  /// Off the ray but neither stationary nor matched: box or discretisation artefacts.
  std::vector<EigenPair> spurious;
  /// Eigenvalues whose stationarity match had a rival candidate within tol_match.
  std::vector<cplx> ambiguous;
  /// Undilated eigenvalues off [0, inf) whose dilated counterpart moved more
  /// than the tolerances allow: likely isolated, but the grid is too coarse to tell.
  std::vector<cplx> unresolved;
  /// Largest |lambda(phi) - lambda(partner)| among isolated and resonance members.
  double max_drift = 0.0;
  double max_residual = 0.0;
};

namespace detail {

struct Nearest {
  int index = -1;
  double distance = std::numeric_limits<double>::infinity();
  bool ambiguous = false;
};

inline Nearest nearest(const std::vector<EigenPair>& set, cplx z, double tol_match) {
  Nearest best;
  for (int j = 0; j < static_cast<int>(set.size()); ++j) {
    const double d = std::abs(set[j].lambda - z);
    if (d < best.distance) best = Nearest{j, d, false};
  }
  if (best.index < 0 || best.distance > tol_match) return best;
  for (int j = 0; j < static_cast<int>(set.size()); ++j)
    if (j != best.index && std::abs(set[j].lambda - set[best.index].lambda) <= tol_match) best.ambiguous = true;
  return best;
}

inline void check_angles(const Potential& v, double phi, double phi_probe) {
  if (!(std::abs(phi_probe) > 0.0) || !(std::abs(phi_probe) < std::abs(phi)) || phi * phi_probe <= 0.0)
    fail(ErrorKind::AngleOrder, "need 0 < |phi_probe| < |phi| with equal signs, got phi_probe = " +
                                    std::to_string(phi_probe) + ", phi = " + std::to_string(phi));
  if (!v.admits(phi)) fail(ErrorKind::AngleOutOfStrip, "phi = " + std::to_string(phi) + " outside the strip of " + v.id());
}

inline double max_res(const SpectrumClassification& c) {
  double r = 0.0;
  for (const auto* l : {&c.isolated, &c.resonance, &c.continuum, &c.embedded_candidates, &c.spurious})
    r = std::max(r, max_residual(*l));
  return r;
}

/// Records the undilated eigenvalue near z if it lies off the [0, inf) band,
/// i.e. z looks like a discrete eigenvalue the classification failed to pin.
inline void note_unresolved(SpectrumClassification& out, const std::vector<EigenPair>& s0, cplx z,
                            const ClassifyOptions& opt) {
  const double reach = 1e-2 * (1.0 + std::abs(z));
  const auto m0 = nearest(s0, z, reach);
  if (m0.index < 0 || m0.distance > reach) return;
  const cplx w = s0[m0.index].lambda;
  if (distance_to_ray(w, 0.0) <= opt.tol_ray(w)) return;
  for (cplx u : out.unresolved)
    if (u == w) return;
  out.unresolved.push_back(w);
}

}  // namespace detail

/// Splits sigma(H(i phi)) using the spectra at 0, phi_probe and phi.
///
/// continuum: within tol_ray of e^{-2 i phi}[0, inf).
/// isolated: matched within tol_match at phi_probe (off that ray too) and
///   within partner_factor * tol_match at 0.
/// resonance: matched at phi_probe, no partner at 0, inside -2 phi < arg z < 0.
/// embedded candidate (real V only): stationary and on the positive real axis.
/// Negative angles mirror everything into the upper half-plane.
inline SpectrumClassification classify_from(const Potential& v, double phi, double phi_probe,
                                            const std::vector<EigenPair>& s0, const std::vector<EigenPair>& sp,
                                            const std::vector<EigenPair>& sf, const ClassifyOptions& opt) {
  SpectrumClassification out;
  out.phi = phi;
  out.phi_probe = phi_probe;
  const Region swept = Region::resonance_sector(phi);
  const bool real_v = v.is_real();
  for (const auto& pair : sf) {
    const cplx z = pair.lambda;
    const double tray = opt.tol_ray(z);
    if (distance_to_ray(z, -2.0 * phi) <= tray) {
      out.continuum.push_back(pair);
      continue;
    }
    const auto mp = detail::nearest(sp, z, opt.tol_match);
    const bool stationary = mp.distance <= opt.tol_match && distance_to_ray(z, -2.0 * phi_probe) > tray;
    if (!stationary) {
      out.spurious.push_back(pair);
      detail::note_unresolved(out, s0, z, opt);
      continue;
    }
    if (mp.ambiguous) out.ambiguous.push_back(z);
    const double tol_partner = opt.partner_factor * opt.tol_match;
    const auto m0 = detail::nearest(s0, z, tol_partner);
    if (real_v && z.real() > 0.0 && std::abs(z.imag()) <= opt.tol_match) {
      out.embedded_candidates.push_back(pair);
    } else if (m0.distance <= tol_partner) {
      if (m0.ambiguous) out.ambiguous.push_back(z);
      const auto& p0 = s0[m0.index];
      out.isolated.push_back(EigenPair{p0.lambda, std::max({pair.residual, p0.residual, sp[mp.index].residual}),
                                       p0.multiplicity});
      out.max_drift = std::max({out.max_drift, mp.distance, m0.distance});
    } else if (swept.contains(z)) {
      out.resonance.push_back(EigenPair{z, std::max(pair.residual, sp[mp.index].residual), pair.multiplicity});
      out.max_drift = std::max(out.max_drift, mp.distance);
    } else {
      out.spurious.push_back(pair);
      detail::note_unresolved(out, s0, z, opt);
    }
  }
  out.max_residual = detail::max_res(out);
  return out;
}

inline SpectrumClassification classify(const Potential& v, const Grid& g, double phi, double phi_probe,
                                       const ClassifyOptions& opt = {}) {
  detail::check_angles(v, phi, phi_probe);
  const auto s = spectra_at(v, g, {0.0, phi_probe, phi}, opt);
  return classify_from(v, phi, phi_probe, s[0], s[1], s[2], opt);
}

/// Potentials that cannot be dilated: isolated = eigenvalues of H off the
/// tol_ray band around [0, inf), everything else continuum.
inline SpectrumClassification classify_undilated(const Potential& v, const Grid& g, const ClassifyOptions& opt = {}) {
  SpectrumClassification out;
  const auto s = spectra_at(v, g, {0.0}, opt);
  for (const auto& pair : s[0]) {
    if (distance_to_ray(pair.lambda, 0.0) <= opt.tol_ray(pair.lambda))
      out.continuum.push_back(pair);
    else
      out.isolated.push_back(pair);
  }
  out.max_residual = detail::max_res(out);
  return out;
}

/// Classification at +phi and -phi sharing one undilated solve. Isolated
/// eigenvalues are the union of both sides (deduplicated within tol_match),
/// so eigenvalues swept by one rotation are still found by the other.
/// Resonances, continuum and embedded candidates come from the +phi side.
inline SpectrumClassification classify_two_sided(const Potential& v, const Grid& g, double phi, double phi_probe,
                                                 const ClassifyOptions& opt = {}) {
  detail::check_angles(v, phi, phi_probe);
  detail::check_angles(v, -phi, -phi_probe);
  const auto s = spectra_at(v, g, {0.0, phi_probe, phi, -phi_probe, -phi}, opt);
  auto plus = classify_from(v, phi, phi_probe, s[0], s[1], s[2], opt);
  const auto minus = classify_from(v, -phi, -phi_probe, s[0], s[3], s[4], opt);
  for (const auto& p : minus.isolated) {
    const bool seen = std::any_of(plus.isolated.begin(), plus.isolated.end(), [&](const EigenPair& q) {
      return std::abs(q.lambda - p.lambda) <= opt.tol_match;
    });
    if (!seen) plus.isolated.push_back(p);
  }
  for (cplx z : minus.ambiguous)
    if (std::any_of(minus.isolated.begin(), minus.isolated.end(),
                    [&](const EigenPair& q) { return std::abs(q.lambda - z) <= 2.0 * opt.tol_match; }))
      plus.ambiguous.push_back(z);
  std::sort(plus.isolated.begin(), plus.isolated.end(), [](const EigenPair& a, const EigenPair& b) {
    return std::make_pair(a.lambda.real(), a.lambda.imag()) < std::make_pair(b.lambda.real(), b.lambda.imag());
  });
  // Unresolved on one side is fine if the other side pinned it down.
  std::vector<cplx> unresolved;
  std::vector<cplx> candidates = plus.unresolved;
  candidates.insert(candidates.end(), minus.unresolved.begin(), minus.unresolved.end());
  for (cplx w : candidates) {
    const bool pinned = std::any_of(plus.isolated.begin(), plus.isolated.end(), [&](const EigenPair& q) {
      return std::abs(q.lambda - w) <= opt.partner_factor * opt.tol_match;
    });
    if (!pinned && std::find(unresolved.begin(), unresolved.end(), w) == unresolved.end()) unresolved.push_back(w);
  }
  plus.unresolved = std::move(unresolved);
  plus.max_drift = std::max(plus.max_drift, minus.max_drift);
  plus.max_residual = std::max(plus.max_residual, minus.max_residual);
  return plus;
}

/// Fraction of eigenvalues within tol_ray of e^{-2 i phi}[0, inf).
inline double ray_fit_fraction(const std::vector<EigenPair>& eigs, double phi, const ClassifyOptions& opt = {}) {
  if (eigs.empty()) return 1.0;
  int on = 0, total = 0;
  for (const auto& p : eigs) {
    total += p.multiplicity;
    if (distance_to_ray(p.lambda, -2.0 * phi) <= opt.tol_ray(p.lambda)) on += p.multiplicity;
  }
  return static_cast<double>(on) / total;
}

struct EigenPath {
  std::vector<double> phi;
  std::vector<cplx> lambda;
  std::vector<int> multiplicity;
  /// |lambda_k - lambda_{k-1}|, 0 at the first point.
  std::vector<double> step;
  bool ambiguous = false;

  double total_displacement() const { return std::accumulate(step.begin(), step.end(), 0.0); }
  double max_deviation() const {
    double d = 0.0;
    for (cplx z : lambda) d = std::max(d, std::abs(z - lambda.front()));
    return d;
  }
  bool constant_multiplicity() const {
    return std::all_of(multiplicity.begin(), multiplicity.end(), [&](int m) { return m == multiplicity.front(); });
  }
};

/// Paths starting from every eigenvalue at phi_grid[0], continued by greedy
/// matching between consecutive angles. A path ends when it loses its partner.
/// A step whose chosen partner has a rival within tol_match marks the path
/// ambiguous instead of guessing.
inline std::vector<EigenPath> trajectory(const Potential& v, const Grid& g, const std::vector<double>& phi_grid,
                                         const ClassifyOptions& opt = {}) {
  if (phi_grid.empty()) fail(ErrorKind::InvalidArgument, "phi grid is empty");
  for (std::size_t k = 1; k < phi_grid.size(); ++k)
    if (!(phi_grid[k] > phi_grid[k - 1])) fail(ErrorKind::AngleOrder, "phi grid must be strictly increasing");
  for (double phi : phi_grid)
    if (!v.admits(phi)) fail(ErrorKind::AngleOutOfStrip, "phi = " + std::to_string(phi) + " outside the strip of " + v.id());
  const auto spectra = spectra_at(v, g, phi_grid, opt);

  std::vector<EigenPath> paths;
  std::vector<int> head;  // index into the current spectrum, -1 once ended
  for (int i = 0; i < static_cast<int>(spectra[0].size()); ++i) {
    const auto& p = spectra[0][i];
    paths.push_back(EigenPath{{phi_grid[0]}, {p.lambda}, {p.multiplicity}, {0.0}, false});
    head.push_back(i);
  }
  for (std::size_t k = 1; k < spectra.size(); ++k) {
    const auto& next = spectra[k];
    const auto cur = lambdas(spectra[k - 1]);
    const auto nxt = lambdas(next);
    // Rival check: a candidate with another candidate within tol_match.
    std::vector<char> crowded(nxt.size(), 0);
    {
      std::vector<int> order(nxt.size());
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(), [&](int a, int b) { return nxt[a].real() < nxt[b].real(); });
      for (std::size_t a = 0; a < order.size(); ++a)
        for (std::size_t b = a + 1; b < order.size(); ++b) {
          if (nxt[order[b]].real() - nxt[order[a]].real() > opt.tol_match) break;
          if (std::abs(nxt[order[a]] - nxt[order[b]]) <= opt.tol_match) crowded[order[a]] = crowded[order[b]] = 1;
        }
    }
    std::vector<int> live;
    std::vector<cplx> from;
    for (int i = 0; i < static_cast<int>(paths.size()); ++i)
      if (head[i] >= 0) {
        live.push_back(i);
        from.push_back(cur[head[i]]);
      }
    const auto match = greedy_match(from, nxt);
    for (std::size_t a = 0; a < live.size(); ++a) {
      const int i = live[a];
      const int j = match[a];
      if (j < 0) {
        head[i] = -1;
        continue;
      }
      auto& path = paths[i];
      path.phi.push_back(phi_grid[k]);
      path.lambda.push_back(nxt[j]);
      path.multiplicity.push_back(next[j].multiplicity);
      path.step.push_back(std::abs(nxt[j] - from[a]));
      if (crowded[j]) path.ambiguous = true;
      head[i] = j;
    }
  }
  return paths;
}

}  // namespace cscale
