#pragma once

// Adaptive Gauss-Kronrod (7/15) quadrature with a global error queue, plus a
// real-line driver that grows the window geometrically until an analytic tail
// bound certifies truncation.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <span>
#include <vector>

#include "cscale/error.hpp"

namespace cscale {

struct QuadratureOptions {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  int max_subdivisions = 20000;
  /// Window growth stops once X exceeds this multiple of the length scale.
  double max_window = 1e30;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  long evaluations = 0;
};

namespace detail {

inline constexpr std::array<double, 8> kronrod_nodes{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kronrod_weights{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// Gauss weights for nodes 1, 3, 5 and the centre.
inline constexpr std::array<double, 4> gauss_weights{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
Panel gk15(F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double k = fc * kronrod_weights[7];
  double g = fc * gauss_weights[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kronrod_nodes[j];
    const double s = f(c - dx) + f(c + dx);
    k += kronrod_weights[j] * s;
    if (j % 2 == 1) g += gauss_weights[j / 2] * s;
  }
  return {a, b, k * h, std::abs((k - g) * h)};
}

}  // namespace detail

/// Integrates f over [a, b] to max(abs_tol, rel_tol * |I|).
template <class F>
QuadratureResult integrate(F&& f, double a, double b, const QuadratureOptions& opt = {}) {
  QuadratureResult out;
  if (a == b) return out;
  std::priority_queue<detail::Panel> queue;
  auto first = detail::gk15(f, a, b);
  out.evaluations = 15;
  double total = first.value;
  double err = first.error;
  queue.push(first);
  int splits = 0;
  while (err > std::max(opt.abs_tol, opt.rel_tol * std::abs(total))) {
    if (splits >= opt.max_subdivisions)
      fail(ErrorKind::ToleranceNotMet, "quadrature budget exhausted on [" + std::to_string(a) + ", " +
                                           std::to_string(b) + "], error " + std::to_string(err));
    const auto worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // Interval at machine resolution; accept its contribution as is.
      err -= worst.error;
      if (queue.empty()) break;
      continue;
    }
    auto left = detail::gk15(f, worst.a, mid);
    auto right = detail::gk15(f, mid, worst.b);
    out.evaluations += 30;
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
    ++splits;
  }
  out.value = total;
  out.error = std::max(err, 0.0);
  return out;
}

/// Integral of a non-negative f over the real line.
///
/// The window [-X, X] starts at the length scale and doubles until
/// tail(X), an upper bound on the mass outside the window, drops below
/// rel_tol / 2 of the running integral. Breakpoints split the panels.
template <class F, class Tail>
QuadratureResult integrate_real_line(F&& f, Tail&& tail, std::span<const double> breakpoints, double scale,
                                     const QuadratureOptions& opt = {}) {
  if (!(scale > 0.0) || !std::isfinite(scale)) scale = 1.0;
  if (!std::isfinite(tail(1e6 * scale))) fail(ErrorKind::NonIntegrable, "integrand tail does not decay");
  double reach = scale;
  for (double b : breakpoints) reach = std::max(reach, std::abs(b));

  std::vector<double> nodes{0.0};
  for (double b : breakpoints) nodes.push_back(b);
  for (double x = scale; x <= reach * 2.0; x *= 2.0) {
    nodes.push_back(x);
    nodes.push_back(-x);
  }
  double X = reach * 2.0;
  nodes.push_back(X);
  nodes.push_back(-X);
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

  QuadratureResult out;
  QuadratureOptions panel = opt;
  auto add_panel = [&](double a, double b) {
    panel.abs_tol = std::max(opt.abs_tol, 1e-3 * opt.rel_tol * std::abs(out.value));
    auto r = integrate(f, a, b, panel);
    out.value += r.value;
    out.error += r.error;
    out.evaluations += r.evaluations;
  };
  // Inner panels first so the absolute floor tracks the dominant mass.
  std::vector<std::pair<double, double>> spans;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) spans.emplace_back(nodes[i], nodes[i + 1]);
  std::sort(spans.begin(), spans.end(), [](const auto& l, const auto& r) {
    return std::min(std::abs(l.first), std::abs(l.second)) < std::min(std::abs(r.first), std::abs(r.second));
  });
  for (auto [a, b] : spans) add_panel(a, b);

  while (true) {
    const double t = tail(X);
    if (std::isfinite(t) && t <= 0.5 * opt.rel_tol * std::abs(out.value)) {
      out.error += t;
      return out;
    }
    if (X > opt.max_window * scale)
      fail(ErrorKind::ToleranceNotMet, "real-line window exceeded " + std::to_string(X));
    add_panel(X, 2.0 * X);
    add_panel(-2.0 * X, -X);
    X *= 2.0;
  }
}

}  // namespace cscale
