#pragma once

// Dilation-analytic potential families and their dilated samples V(e^theta x).

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cscale/angle.hpp"
#include "cscale/error.hpp"

namespace cscale {

namespace detail {

/// Re(c e^{2 i phi}) = (Re c) cos 2phi - (Im c) sin 2phi, the decay rate of
/// exp(-c (e^{i phi} x)^2). Values within rounding of zero count as zero, so
/// boundary angles such as c = 1+i, phi = pi/8 are rejected as they are in
/// exact arithmetic.
inline double gaussian_decay(cplx c, double phi) {
  const double F = c.real() * std::cos(2.0 * phi) - c.imag() * std::sin(2.0 * phi);
  return F > 16.0 * std::numeric_limits<double>::epsilon() * std::abs(c) ? F : 0.0;
}

}  // namespace detail

/// a * exp(-c x^2), Re c > 0.
struct Gaussian {
  cplx amplitude{1.0, 0.0};
  cplx c{1.0, 0.0};
};

/// c / (1 + x^2)^s, s > 0, principal branch.
struct Rational {
  cplx c{1.0, 0.0};
  double s = 1.0;
};

/// -depth on |x| < halfwidth. Negative depth is a barrier.
struct FiniteWell {
  double depth = 0.0;
  double halfwidth = 1.0;
};

/// a * (exp(-c (x - x0)^2) + exp(-c (x + x0)^2)); a double barrier for a > 0.
struct GaussianPair {
  cplx amplitude{1.0, 0.0};
  cplx c{1.0, 0.0};
  double center = 1.0;
};

/// Samples on an increasing grid, linearly interpolated, zero outside.
struct Tabulated {
  std::vector<double> x;
  std::vector<cplx> v;
  std::string label = "table";
};

using Family = std::variant<Gaussian, Rational, FiniteWell, GaussianPair, Tabulated>;

class Potential {
 public:
  static Potential gaussian(cplx c, cplx amplitude = 1.0) {
    if (!(c.real() > 0.0)) fail(ErrorKind::InvalidArgument, "gaussian requires Re c > 0");
    return Potential(Gaussian{amplitude, c});
  }

  static Potential rational(cplx c, double s) {
    if (!(s > 0.0)) fail(ErrorKind::InvalidArgument, "rational requires s > 0");
    return Potential(Rational{c, s});
  }

  static Potential finite_well(double depth, double halfwidth) {
    if (!(halfwidth > 0.0)) fail(ErrorKind::InvalidArgument, "finite well requires halfwidth > 0");
    return Potential(FiniteWell{depth, halfwidth});
  }

  static Potential free() { return finite_well(0.0, 1.0); }

  static Potential gaussian_pair(cplx c, double center, cplx amplitude = 1.0) {
    if (!(c.real() > 0.0)) fail(ErrorKind::InvalidArgument, "gaussian pair requires Re c > 0");
    if (!(center >= 0.0)) fail(ErrorKind::InvalidArgument, "gaussian pair requires center >= 0");
    return Potential(GaussianPair{amplitude, c, center});
  }

  static Potential tabulated(std::vector<double> x, std::vector<cplx> v, std::string label = "table") {
    if (x.size() < 2 || x.size() != v.size())
      fail(ErrorKind::InvalidArgument, "tabulated potential needs >= 2 samples of matching length");
    if (!std::is_sorted(x.begin(), x.end()) ||
        std::adjacent_find(x.begin(), x.end()) != x.end())
      fail(ErrorKind::InvalidArgument, "tabulated abscissae must be strictly increasing");
    return Potential(Tabulated{std::move(x), std::move(v), std::move(label)});
  }

  /// Samples f on n equally spaced points of [a, b].
  template <class F>
  static Potential tabulate(F&& f, double a, double b, std::size_t n, std::string label = "table") {
    std::vector<double> xs(n);
    std::vector<cplx> vs(n);
    for (std::size_t i = 0; i < n; ++i) {
      xs[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
      vs[i] = cplx(f(xs[i]));
    }
    return tabulated(std::move(xs), std::move(vs), std::move(label));
  }

  const Family& family() const noexcept { return family_; }

  /// Open interval of admissible dilation angles phi. theta = 0 is always allowed.
  std::pair<double, double> angle_window() const {
    constexpr double inf = std::numeric_limits<double>::infinity();
    return std::visit(
        [&](const auto& f) -> std::pair<double, double> {
          using T = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<T, Gaussian> || std::is_same_v<T, GaussianPair>) {
            // Re(c e^{2i phi}) > 0  <=>  |2 phi + arg c| < pi/2
            const double a = std::arg(f.c);
            return {-pi / 4.0 - a / 2.0, pi / 4.0 - a / 2.0};
          } else if constexpr (std::is_same_v<T, Rational>) {
            return {-pi / 2.0, pi / 2.0};
          } else if constexpr (std::is_same_v<T, FiniteWell>) {
            if (f.depth == 0.0) return {-inf, inf};
            return {0.0, 0.0};
          } else {
            return {0.0, 0.0};
          }
        },
        family_);
  }

  /// Half-width of the largest symmetric strip |Im theta| < alpha of analyticity.
  double alpha() const {
    const auto [lo, hi] = angle_window();
    return std::min(-lo, hi);
  }

  bool admits(double phi) const {
    if (phi == 0.0) return true;
    const auto [lo, hi] = angle_window();
    return lo < phi && phi < hi;
  }

  bool is_real() const {
    return std::visit(
        [](const auto& f) {
          using T = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<T, Gaussian> || std::is_same_v<T, GaussianPair>) {
            return f.amplitude.imag() == 0.0 && f.c.imag() == 0.0;
          } else if constexpr (std::is_same_v<T, Rational>) {
            return f.c.imag() == 0.0;
          } else if constexpr (std::is_same_v<T, FiniteWell>) {
            return true;
          } else {
            return std::all_of(f.v.begin(), f.v.end(), [](cplx z) { return z.imag() == 0.0; });
          }
        },
        family_);
  }

  bool is_zero() const {
    if (const auto* w = std::get_if<FiniteWell>(&family_)) return w->depth == 0.0;
    return false;
  }

  /// Integrability of |V|^p on the real line for the rational tail.
  void validate_for_gamma(double gamma) const {
    if (const auto* r = std::get_if<Rational>(&family_)) {
      if (!(r->s > 1.0 / (2.0 * gamma + 1.0)))
        fail(ErrorKind::InvalidArgument, "rational requires s > 1/(2 gamma + 1)");
    }
  }

  std::string id() const {
    std::ostringstream os;
    os.precision(6);
    auto c = [&](cplx z) { os << '(' << z.real() << ',' << z.imag() << ')'; };
    std::visit(
        [&](const auto& f) {
          using T = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<T, Gaussian>) {
            os << "gaussian[a=";
            c(f.amplitude);
            os << ",c=";
            c(f.c);
            os << ']';
          } else if constexpr (std::is_same_v<T, Rational>) {
            os << "rational[c=";
            c(f.c);
            os << ",s=" << f.s << ']';
          } else if constexpr (std::is_same_v<T, FiniteWell>) {
            os << "well[depth=" << f.depth << ",halfwidth=" << f.halfwidth << ']';
          } else if constexpr (std::is_same_v<T, GaussianPair>) {
            os << "gaussian_pair[a=";
            c(f.amplitude);
            os << ",c=";
            c(f.c);
            os << ",x0=" << f.center << ']';
          } else {
            os << "tabulated[" << f.label << ",n=" << f.x.size() << ']';
          }
        },
        family_);
    return os.str();
  }

  /// V(e^theta x). Throws AngleOutOfStrip outside the admissible window.
  cplx dilated(ComplexAngle theta, double x) const {
    if (!admits(theta.phi))
      fail(ErrorKind::AngleOutOfStrip, "phi = " + std::to_string(theta.phi) + " outside the strip of " + id());
    return sample(theta, x);
  }

  cplx operator()(double x) const { return sample(ComplexAngle{}, x); }

  /// Upper bound on the integral of |V_theta|^p over |x| > X; +inf when no
  /// finite bound exists (the integrand does not decay).
  double tail_bound(ComplexAngle theta, double p, double X) const {
    constexpr double inf = std::numeric_limits<double>::infinity();
    return std::visit(
        [&](const auto& f) -> double {
          using T = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<T, Gaussian>) {
            const double F = detail::gaussian_decay(f.c, theta.phi);
            if (!(F > 0.0)) return inf;
            const double a = std::pow(std::abs(f.amplitude), p);
            return a * std::sqrt(pi / (p * F)) * std::erfc(X * std::sqrt(p * F));
          } else if constexpr (std::is_same_v<T, GaussianPair>) {
            const double F = detail::gaussian_decay(f.c, theta.phi);
            if (!(F > 0.0)) return inf;
            const double G = f.center * (f.c * theta.scale()).real();
            const double H = f.c.real() * f.center * f.center;
            const double shift = G / F;
            const double sq = std::sqrt(p * F);
            const double pre = std::exp(-p * (H - G * G / F)) * 0.5 * std::sqrt(pi / (p * F));
            const double one = pre * (std::erfc(sq * (X - shift)) + std::erfc(sq * (X + shift)));
            // |g+ + g-|^p <= 2^{p-1}(|g+|^p + |g-|^p), and g- mirrors g+.
            return std::pow(std::abs(f.amplitude), p) * std::pow(2.0, p - 1.0) * 2.0 * one;
          } else if constexpr (std::is_same_v<T, Rational>) {
            const double q = 2.0 * f.s * p;
            if (!(q > 1.0)) return inf;
            const double c2 = std::cos(2.0 * theta.phi);
            const double shrink = std::min(1.0, 1.0 + 2.0 * c2 / (X * X));
            if (!(shrink > 0.0)) return inf;
            return 2.0 * std::pow(std::abs(f.c), p) * std::pow(shrink, -f.s * p / 2.0) *
                   std::pow(X, 1.0 - q) / (q - 1.0);
          } else if constexpr (std::is_same_v<T, FiniteWell>) {
            return 2.0 * std::pow(std::abs(f.depth), p) * std::max(0.0, f.halfwidth - X);
          } else {
            double vmax = 0.0;
            for (cplx z : f.v) vmax = std::max(vmax, std::abs(z));
            const double outside = std::max(0.0, f.x.back() - X) + std::max(0.0, -X - f.x.front());
            return std::pow(vmax, p) * outside;
          }
        },
        family_);
  }

  /// Points where |V_theta| has a kink or a peak, used to split quadrature panels.
  std::vector<double> breakpoints(ComplexAngle theta) const {
    return std::visit(
        [&](const auto& f) -> std::vector<double> {
          using T = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<T, FiniteWell>) {
            return {-f.halfwidth, f.halfwidth};
          } else if constexpr (std::is_same_v<T, GaussianPair>) {
            const double F = detail::gaussian_decay(f.c, theta.phi);
            const double G = f.center * (f.c * theta.scale()).real();
            if (F > 0.0) return {-std::abs(G / F), std::abs(G / F)};
            return {-f.center, f.center};
          } else if constexpr (std::is_same_v<T, Tabulated>) {
            return f.x;
          } else {
            return {};
          }
        },
        family_);
  }

  /// Typical width of V_theta, the first quadrature panel size.
  double length_scale(ComplexAngle theta) const {
    return std::visit(
        [&](const auto& f) -> double {
          using T = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<T, Gaussian> || std::is_same_v<T, GaussianPair>) {
            const double F = detail::gaussian_decay(f.c, theta.phi);
            return F > 0.0 ? 1.0 / std::sqrt(F) : 1.0;
          } else if constexpr (std::is_same_v<T, FiniteWell>) {
            return f.halfwidth;
          } else if constexpr (std::is_same_v<T, Tabulated>) {
            return std::max(std::abs(f.x.front()), std::abs(f.x.back()));
          } else {
            return 1.0;
          }
        },
        family_);
  }

 private:
  explicit Potential(Family f) : family_(std::move(f)) {}

  cplx sample(ComplexAngle theta, double x) const {
    return std::visit(
        [&](const auto& f) -> cplx {
          using T = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<T, Gaussian>) {
            return f.amplitude * std::exp(-f.c * theta.scale2() * (x * x));
          } else if constexpr (std::is_same_v<T, GaussianPair>) {
            const cplx z = theta.scale() * x;
            return f.amplitude *
                   (std::exp(-f.c * (z - f.center) * (z - f.center)) + std::exp(-f.c * (z + f.center) * (z + f.center)));
          } else if constexpr (std::is_same_v<T, Rational>) {
            const cplx base = 1.0 + theta.scale2() * (x * x);
            if (base.imag() == 0.0 && base.real() <= 0.0)
              fail(ErrorKind::BranchCut, "1 + e^{2 theta} x^2 on the principal-branch cut at x = " + std::to_string(x));
            return f.c * std::exp(-f.s * std::log(base));
          } else if constexpr (std::is_same_v<T, FiniteWell>) {
            if (f.depth == 0.0) return 0.0;
            return std::abs(x) < f.halfwidth ? cplx(-f.depth) : cplx(0.0);
          } else {
            if (x < f.x.front() || x > f.x.back()) return 0.0;
            auto it = std::upper_bound(f.x.begin(), f.x.end(), x);
            if (it == f.x.end()) return f.v.back();
            const auto j = static_cast<std::size_t>(it - f.x.begin());
            const double t = (x - f.x[j - 1]) / (f.x[j] - f.x[j - 1]);
            return (1.0 - t) * f.v[j - 1] + t * f.v[j];
          }
        },
        family_);
  }

  Family family_;
};

/// V_theta(x) = V(e^theta x).
inline cplx evaluate_dilated(const Potential& v, ComplexAngle theta, double x) {
  if (!std::isfinite(x)) fail(ErrorKind::InvalidArgument, "x must be finite");
  return v.dilated(theta, x);
}

/// (Re c) cos 2phi > (Im c) sin 2phi, i.e. |exp(-c (e^{i phi} x)^2)| decays.
inline bool cphi_condition(cplx c, double phi) {
  return detail::gaussian_decay(c, phi) > 0.0;
}

/// Closed-form L^p norm of exp(-c (e^{i phi} x)^2) on the real line.
inline double gaussian_norm_closed_form(cplx c, double phi, double p) {
  if (!(c.real() > 0.0)) fail(ErrorKind::InvalidArgument, "Re c must be positive");
  if (!(p >= 1.0)) fail(ErrorKind::InvalidArgument, "p must be >= 1");
  const double F = detail::gaussian_decay(c, phi);
  if (!(F > 0.0)) fail(ErrorKind::ConditionViolated, "(Re c) cos 2phi <= (Im c) sin 2phi");
  return std::pow(pi / (F * p), 1.0 / (2.0 * p));
}

/// Angle where the Gaussian's dilated norm switches from decreasing to increasing.
inline double critical_angle(cplx c) {
  if (!(c.real() > 0.0)) fail(ErrorKind::InvalidArgument, "Re c must be positive");
  if (!(c.imag() < 0.0)) fail(ErrorKind::WrongRegime, "critical angle needs Im c < 0");
  return 0.5 * std::atan(-c.imag() / c.real());
}

}  // namespace cscale
