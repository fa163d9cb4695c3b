#pragma once

// Non-Hermitian eigenvalues of dilated Hamiltonians.
//
// Tridiagonal complex-symmetric matrices (every FD2 operator) go through an
// implicit QL iteration with complex-orthogonal rotations, O(N^2) in total,
// and residuals come from banded inverse iteration. Anything else, and any
// tridiagonal case where the rotations break down, falls back to Eigen's
// dense complex Schur solver (Hessenberg reduction + shifted QR).

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "cscale/operator.hpp"

namespace cscale {

struct EigenPair {
  cplx lambda;
  /// ||A v - lambda v|| / (||A||_inf ||v||), worst member of the cluster.
  double residual = 0.0;
  int multiplicity = 1;
};

struct EigenOptions {
  double tol_eig = 1e-8;
  /// Eigenvalues closer than cluster_rel * ||A||_inf merge into one pair.
  double cluster_rel = 1e-6;
  int max_iterations = 60;
  bool force_dense = false;
};

namespace detail {

// Complex-symmetric tridiagonal QL with implicit Wilkinson-type shifts.
// d: diagonal, e: off-diagonal (e[i] couples i and i+1, e[n-1] unused).
// Returns false on breakdown or when the iteration cap is hit.
inline bool tql_complex_symmetric(std::vector<cplx>& d, std::vector<cplx>& e, int max_iter, int& failed_index) {
  const int n = static_cast<int>(d.size());
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m = l;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m != l) {
        if (iter++ == max_iter) {
          failed_index = l;
          return false;
        }
        cplx g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        cplx r = std::sqrt(g * g + 1.0);
        g = d[m] - d[l] + e[l] / (g + (std::abs(g + r) >= std::abs(g - r) ? r : -r));
        cplx s = 1.0, c = 1.0, p = 0.0;
        int i = m - 1;
        bool deflated = false;
        for (; i >= l; --i) {
          const cplx f = s * e[i];
          const cplx b = c * e[i];
          r = std::sqrt(f * f + g * g);
          e[i + 1] = r;
          const double scale = std::abs(f) + std::abs(g);
          if (scale == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            deflated = true;
            break;
          }
          if (std::abs(r) < 1e-10 * scale) {
            // Isotropic pair f^2 + g^2 ~ 0: no complex-orthogonal rotation exists.
            failed_index = l;
            return false;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
        }
        if (deflated) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
  return true;
}

// LU with partial pivoting of a tridiagonal matrix and the matching solve.
struct TridiagonalLU {
  std::vector<cplx> dl, d, du, du2;
  std::vector<int> pivot;

  TridiagonalLU(std::vector<cplx> sub, std::vector<cplx> diag, std::vector<cplx> sup, double tiny)
      : dl(std::move(sub)), d(std::move(diag)), du(std::move(sup)) {
    const int n = static_cast<int>(d.size());
    du2.assign(static_cast<std::size_t>(std::max(n - 2, 0)), 0.0);
    pivot.assign(static_cast<std::size_t>(n), 0);
    for (int i = 0; i + 1 < n; ++i) {
      if (std::abs(d[i]) >= std::abs(dl[i])) {
        pivot[i] = i;
        if (d[i] == 0.0) d[i] = tiny;
        const cplx fact = dl[i] / d[i];
        dl[i] = fact;
        d[i + 1] -= fact * du[i];
      } else {
        pivot[i] = i + 1;
        const cplx fact = d[i] / dl[i];
        d[i] = dl[i];
        dl[i] = fact;
        const cplx temp = du[i];
        du[i] = d[i + 1];
        d[i + 1] = temp - fact * d[i + 1];
        if (i + 2 < n) {
          du2[i] = du[i + 1];
          du[i + 1] = -fact * du[i + 1];
        }
      }
    }
    for (auto& x : d)
      if (std::abs(x) == 0.0) x = tiny;
  }

  void solve(std::vector<cplx>& b) const {
    const int n = static_cast<int>(d.size());
    for (int i = 0; i + 1 < n; ++i) {
      if (pivot[i] == i) {
        b[i + 1] -= dl[i] * b[i];
      } else {
        const cplx temp = b[i];
        b[i] = b[i + 1];
        b[i + 1] = temp - dl[i] * b[i];
      }
    }
    b[n - 1] /= d[n - 1];
    if (n > 1) b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
    for (int i = n - 3; i >= 0; --i) b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / d[i];
  }
};

inline double vec_norm(const std::vector<cplx>& v) {
  double s = 0.0;
  for (cplx z : v) s += std::norm(z);
  return std::sqrt(s);
}

// Residual of lambda through three steps of shifted inverse iteration.
inline double tridiagonal_residual(const ComplexBand& a, cplx lambda, double anorm) {
  const int n = a.size();
  std::vector<cplx> sub(static_cast<std::size_t>(n - 1)), sup(static_cast<std::size_t>(n - 1)),
      diag(static_cast<std::size_t>(n));
  const cplx mu = lambda + cplx(1e-12 * anorm, 1e-12 * anorm);
  for (int i = 0; i < n; ++i) diag[i] = a(i, i) - mu;
  for (int i = 0; i + 1 < n; ++i) {
    sub[i] = a(i + 1, i);
    sup[i] = a(i, i + 1);
  }
  TridiagonalLU lu(sub, diag, sup, std::numeric_limits<double>::epsilon() * anorm);
  std::vector<cplx> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[i] = cplx(1.0 + 0.5 * std::sin(0.618 * (i + 1)), 0.25 * std::cos(1.3 * (i + 1)));
  for (int it = 0; it < 3; ++it) {
    lu.solve(v);
    const double nv = vec_norm(v);
    if (!(nv > 0.0) || !std::isfinite(nv)) break;
    for (auto& z : v) z /= nv;
  }
  std::vector<cplx> r(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    cplx acc = a(i, i) * v[i] - lambda * v[i];
    if (i > 0) acc += a(i, i - 1) * v[i - 1];
    if (i + 1 < n) acc += a(i, i + 1) * v[i + 1];
    r[i] = acc;
  }
  return vec_norm(r) / (anorm * vec_norm(v));
}

struct RawSpectrum {
  std::vector<cplx> values;
  std::vector<double> residuals;
};

inline RawSpectrum dense_spectrum(const Eigen::MatrixXcd& a, double anorm) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(a, true);
  if (es.info() != Eigen::Success)
    fail(ErrorKind::NoConvergence, "dense complex Schur iteration failed (n = " + std::to_string(a.rows()) + ")");
  RawSpectrum out;
  const auto n = a.rows();
  for (Eigen::Index k = 0; k < n; ++k) {
    const cplx lam = es.eigenvalues()(k);
    const Eigen::VectorXcd v = es.eigenvectors().col(k);
    const double nv = v.norm();
    const double res = anorm > 0.0 && nv > 0.0 ? (a * v - lam * v).norm() / (anorm * nv) : 0.0;
    out.values.push_back(lam);
    out.residuals.push_back(res);
  }
  return out;
}

inline double dense_norm_inf(const Eigen::MatrixXcd& a) {
  return a.rows() == 0 ? 0.0 : a.cwiseAbs().rowwise().sum().maxCoeff();
}

inline RawSpectrum raw_spectrum(const ComplexBand& a, const EigenOptions& opt) {
  const double anorm = a.norm_inf();
  if (!opt.force_dense && a.bandwidth() == 1 && a.is_symmetric()) {
    const int n = a.size();
    std::vector<cplx> d(static_cast<std::size_t>(n)), e(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) d[i] = a(i, i);
    for (int i = 0; i + 1 < n; ++i) e[i] = a(i, i + 1);
    int bad = -1;
    if (tql_complex_symmetric(d, e, opt.max_iterations, bad)) {
      RawSpectrum out;
      out.values = std::move(d);
      out.residuals.reserve(out.values.size());
      for (cplx lam : out.values)
        out.residuals.push_back(anorm > 0.0 ? tridiagonal_residual(a, lam, anorm) : 0.0);
      return out;
    }
  }
  return dense_spectrum(a.dense(), anorm);
}

struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  }
  void join(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace detail

/// Merges eigenvalues within radius into pairs with summed multiplicity.
/// Output is ordered by (Re, Im).
inline std::vector<EigenPair> cluster(const std::vector<cplx>& values, const std::vector<double>& residuals,
                                      double radius) {
  const int n = static_cast<int>(values.size());
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return values[a].real() < values[b].real(); });
  detail::DisjointSets sets(n);
  for (int ii = 0; ii < n; ++ii)
    for (int jj = ii + 1; jj < n; ++jj) {
      const int i = order[ii], j = order[jj];
      if (values[j].real() - values[i].real() > radius) break;
      if (std::abs(values[i] - values[j]) <= radius) sets.join(i, j);
    }
  std::vector<int> root_slot(static_cast<std::size_t>(n), -1);
  std::vector<EigenPair> out;
  for (int i = 0; i < n; ++i) {
    const int r = sets.find(i);
    if (root_slot[r] < 0) {
      root_slot[r] = static_cast<int>(out.size());
      out.push_back(EigenPair{values[i], residuals[i], 1});
    } else {
      auto& p = out[root_slot[r]];
      p.lambda += values[i];
      p.residual = std::max(p.residual, residuals[i]);
      ++p.multiplicity;
    }
  }
  for (auto& p : out) p.lambda /= static_cast<double>(p.multiplicity);
  std::sort(out.begin(), out.end(), [](const EigenPair& a, const EigenPair& b) {
    if (a.lambda.real() != b.lambda.real()) return a.lambda.real() < b.lambda.real();
    return a.lambda.imag() < b.lambda.imag();
  });
  return out;
}

/// All eigenvalues of a banded complex matrix, clustered.
inline std::vector<EigenPair> eigenvalues(const ComplexBand& a, const EigenOptions& opt = {}) {
  auto raw = detail::raw_spectrum(a, opt);
  return cluster(raw.values, raw.residuals, opt.cluster_rel * a.norm_inf());
}

inline std::vector<EigenPair> eigenvalues(const Eigen::MatrixXcd& a, const EigenOptions& opt = {}) {
  const double anorm = detail::dense_norm_inf(a);
  auto raw = detail::dense_spectrum(a, anorm);
  return cluster(raw.values, raw.residuals, opt.cluster_rel * anorm);
}

inline std::vector<EigenPair> eigenvalues(const DilatedHamiltonian& hm, const EigenOptions& opt = {}) {
  return eigenvalues(hm.matrix, opt);
}

inline double max_residual(const std::vector<EigenPair>& eigs) {
  double r = 0.0;
  for (const auto& p : eigs) r = std::max(r, p.residual);
  return r;
}

}  // namespace cscale
