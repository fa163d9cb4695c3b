#pragma once

// Finite-difference discretisation of H(theta) = e^{-2 theta}(H_0 + e^{2 theta} V_theta)
// and of the un-rotated form H~(theta) = H_0 + e^{2 theta} V_theta on a Dirichlet box.

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "cscale/potential.hpp"

namespace cscale {

/// Interior points x_j = -L + j h, j = 1..N, with h = 2L/(N+1).
class Grid {
 public:
  Grid(double half_width, int points) : L_(half_width), N_(points) {
    if (!(half_width > 0.0)) fail(ErrorKind::InvalidArgument, "grid.L must be positive");
    if (points < 3) fail(ErrorKind::InvalidArgument, "grid.N must be at least 3");
  }

  double L() const noexcept { return L_; }
  int N() const noexcept { return N_; }
  double h() const noexcept { return 2.0 * L_ / (N_ + 1); }
  double x(int j) const noexcept { return -L_ + (j + 1) * h(); }  // j is 0-based

  std::vector<double> points() const {
    std::vector<double> xs(static_cast<std::size_t>(N_));
    for (int j = 0; j < N_; ++j) xs[static_cast<std::size_t>(j)] = x(j);
    return xs;
  }

 private:
  double L_;
  int N_;
};

enum class Scheme { FD2, FD4 };

/// Square matrix stored by diagonals: offsets -b..b.
template <class T>
class BandMatrix {
 public:
  BandMatrix() = default;
  BandMatrix(int n, int bandwidth) : n_(n), b_(bandwidth), data_(static_cast<std::size_t>((2 * bandwidth + 1) * n)) {}

  int size() const noexcept { return n_; }
  int bandwidth() const noexcept { return b_; }

  T operator()(int i, int j) const {
    const int k = j - i;
    if (k < -b_ || k > b_) return T{};
    return data_[index(i, k)];
  }
  T& at(int i, int j) {
    const int k = j - i;
    if (k < -b_ || k > b_) fail(ErrorKind::InvalidArgument, "entry outside the band");
    return data_[index(i, k)];
  }

  template <class F>
  auto map(F&& f) const {
    using U = decltype(f(T{}));
    BandMatrix<U> out(n_, b_);
    for (int i = 0; i < n_; ++i)
      for (int k = -b_; k <= b_; ++k)
        if (i + k >= 0 && i + k < n_) out.at(i, i + k) = f((*this)(i, i + k));
    return out;
  }

  Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic> dense() const {
    Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic> m =
        Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>::Zero(n_, n_);
    for (int i = 0; i < n_; ++i)
      for (int k = -b_; k <= b_; ++k)
        if (i + k >= 0 && i + k < n_) m(i, i + k) = (*this)(i, i + k);
    return m;
  }

  /// Max absolute row sum.
  double norm_inf() const {
    double best = 0.0;
    for (int i = 0; i < n_; ++i) {
      double row = 0.0;
      for (int k = -b_; k <= b_; ++k)
        if (i + k >= 0 && i + k < n_) row += std::abs((*this)(i, i + k));
      best = std::max(best, row);
    }
    return best;
  }

  bool is_symmetric() const {
    for (int i = 0; i < n_; ++i)
      for (int k = 1; k <= b_; ++k)
        if (i + k < n_ && (*this)(i, i + k) != (*this)(i + k, i)) return false;
    return true;
  }

 private:
  std::size_t index(int i, int k) const { return static_cast<std::size_t>((k + b_) * n_ + i); }

  int n_ = 0;
  int b_ = 0;
  std::vector<T> data_;
};

using RealBand = BandMatrix<double>;
using ComplexBand = BandMatrix<cplx>;

/// -d^2/dx^2 with Dirichlet walls. FD4 uses the 5-point stencil with an odd
/// ghost value u_{-1} = -u_1 in the first and last rows, which keeps it symmetric.
inline RealBand laplacian_matrix(const Grid& g, Scheme scheme = Scheme::FD2) {
  const int n = g.N();
  const double h2 = g.h() * g.h();
  if (scheme == Scheme::FD2) {
    RealBand m(n, 1);
    for (int i = 0; i < n; ++i) {
      m.at(i, i) = 2.0 / h2;
      if (i > 0) m.at(i, i - 1) = -1.0 / h2;
      if (i + 1 < n) m.at(i, i + 1) = -1.0 / h2;
    }
    return m;
  }
  RealBand m(n, 2);
  const double s = 1.0 / (12.0 * h2);
  for (int i = 0; i < n; ++i) {
    m.at(i, i) = 30.0 * s;
    if (i > 0) m.at(i, i - 1) = -16.0 * s;
    if (i + 1 < n) m.at(i, i + 1) = -16.0 * s;
    if (i > 1) m.at(i, i - 2) = s;
    if (i + 2 < n) m.at(i, i + 2) = s;
  }
  m.at(0, 0) = 29.0 * s;
  m.at(n - 1, n - 1) = 29.0 * s;
  return m;
}

enum class Form {
  Full,   // H(theta)
  Tilde,  // H~(theta)
};

struct DilatedHamiltonian {
  ComplexAngle theta;
  Form form = Form::Full;
  ComplexBand matrix;
  Grid grid{1.0, 3};
  Scheme scheme = Scheme::FD2;
  std::string potential_id;
};

/// Tilde = laplacian + diag(e^{2 theta} V_theta(x_j)); Full = e^{-2 theta} Tilde.
inline DilatedHamiltonian assemble(const Grid& g, const Potential& v, ComplexAngle theta, Form form,
                                   Scheme scheme = Scheme::FD2) {
  if (!v.admits(theta.phi))
    fail(ErrorKind::AngleOutOfStrip, "phi = " + std::to_string(theta.phi) + " outside the strip of " + v.id());
  const RealBand lap = laplacian_matrix(g, scheme);
  ComplexBand m = lap.map([](double a) { return cplx(a); });
  const cplx e2 = theta.scale2();
  for (int j = 0; j < g.N(); ++j) m.at(j, j) += e2 * v.dilated(theta, g.x(j));
  if (form == Form::Full) {
    const cplx rot = std::conj(e2);
    m = m.map([rot](cplx a) { return rot * a; });
  }
  return DilatedHamiltonian{theta, form, std::move(m), g, scheme, v.id()};
}

/// Binary dump: magic "CSHM", u32 version 1, i64 N, f64 L, f64 phi, u32 form
/// (0 Full, 1 Tilde), then N*N (re, im) f64 pairs in row-major order.
/// All fields little-endian as laid out in memory.
inline void write_matrix_binary(const DilatedHamiltonian& hm, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) fail(ErrorKind::InvalidArgument, "cannot open " + path);
  const char magic[4] = {'C', 'S', 'H', 'M'};
  const std::uint32_t version = 1;
  const std::int64_t n = hm.grid.N();
  const double L = hm.grid.L();
  const double phi = hm.theta.phi;
  const std::uint32_t form = hm.form == Form::Full ? 0u : 1u;
  os.write(magic, 4);
  os.write(reinterpret_cast<const char*>(&version), sizeof version);
  os.write(reinterpret_cast<const char*>(&n), sizeof n);
  os.write(reinterpret_cast<const char*>(&L), sizeof L);
  os.write(reinterpret_cast<const char*>(&phi), sizeof phi);
  os.write(reinterpret_cast<const char*>(&form), sizeof form);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const cplx z = hm.matrix(i, j);
      const double pair[2] = {z.real(), z.imag()};
      os.write(reinterpret_cast<const char*>(pair), sizeof pair);
    }
}

struct MatrixDump {
  std::int64_t n = 0;
  double L = 0.0;
  double phi = 0.0;
  Form form = Form::Full;
  Eigen::MatrixXcd matrix;
};

inline MatrixDump read_matrix_binary(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) fail(ErrorKind::InvalidArgument, "cannot open " + path);
  char magic[4];
  std::uint32_t version = 0, form = 0;
  MatrixDump d;
  is.read(magic, 4);
  is.read(reinterpret_cast<char*>(&version), sizeof version);
  if (std::string(magic, 4) != "CSHM" || version != 1) fail(ErrorKind::InvalidArgument, "not a matrix dump: " + path);
  is.read(reinterpret_cast<char*>(&d.n), sizeof d.n);
  is.read(reinterpret_cast<char*>(&d.L), sizeof d.L);
  is.read(reinterpret_cast<char*>(&d.phi), sizeof d.phi);
  is.read(reinterpret_cast<char*>(&form), sizeof form);
  d.form = form == 0 ? Form::Full : Form::Tilde;
  d.matrix.resize(d.n, d.n);
  for (std::int64_t i = 0; i < d.n; ++i)
    for (std::int64_t j = 0; j < d.n; ++j) {
      double pair[2];
      is.read(reinterpret_cast<char*>(pair), sizeof pair);
      d.matrix(i, j) = cplx(pair[0], pair[1]);
    }
  if (!is) fail(ErrorKind::InvalidArgument, "truncated matrix dump: " + path);
  return d;
}

}  // namespace cscale
