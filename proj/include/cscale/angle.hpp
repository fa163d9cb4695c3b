#pragma once

#include <complex>
#include <numbers>

namespace cscale {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;

/// Purely imaginary dilation parameter theta = i*phi.
///
/// Only Im(theta) affects the spectrum of the dilated operator, so the real
/// part is never represented. Repeated dilations compose additively.
struct ComplexAngle {
  double phi = 0.0;

  constexpr ComplexAngle() = default;
  constexpr explicit ComplexAngle(double p) : phi(p) {}

  cplx theta() const { return {0.0, phi}; }
  /// e^{theta}
  cplx scale() const { return std::polar(1.0, phi); }
  /// e^{2 theta}
  cplx scale2() const { return std::polar(1.0, 2.0 * phi); }

  constexpr ComplexAngle operator+(ComplexAngle o) const { return ComplexAngle{phi + o.phi}; }
  constexpr ComplexAngle operator-() const { return ComplexAngle{-phi}; }
  constexpr bool operator==(const ComplexAngle&) const = default;
};

}  // namespace cscale
