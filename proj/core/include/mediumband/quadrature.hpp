// SPDX-License-Identifier: Apache-2.0
//
// mediumband: link-level simulation and BER analysis for mediumband wireless channels

#pragma once

#include <cmath>
#include <cstddef>

namespace mediumband {

/// Fixed 15-point Gauss-Legendre rule on [a, b].
template <typename F>
double gauss_legendre_15(F&& f, double a, double b) {
  // Abscissae (positive half) and weights for n = 15 on [-1, 1].
  static constexpr double kNode[8] = {
      0.0000000000000000, 0.2011940939974345, 0.3941513470775634,
      0.5709721726085388, 0.7244177313601701, 0.8482065834104272,
      0.9372733924007060, 0.9879925180204854};
  static constexpr double kWeight[8] = {
      0.2025782419255613, 0.1984314853271116, 0.1861610000155622,
      0.1662692058169939, 0.1395706779261543, 0.1071592204671719,
      0.0703660474881081, 0.0307532419961173};

  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = kWeight[0] * f(mid);
  for (int i = 1; i < 8; ++i) {
    const double dx = half * kNode[i];
    sum += kWeight[i] * (f(mid - dx) + f(mid + dx));
  }
  return half * sum;
}

struct QuadratureOptions {
  double abs_tol = 1e-12;
  int max_depth = 40;
};

namespace detail {

template <typename F>
double adaptive_gl_step(F& f, double a, double b, double whole, double tol,
                        int depth, const QuadratureOptions& opts) {
  const double mid = 0.5 * (a + b);
  const double left = gauss_legendre_15(f, a, mid);
  const double right = gauss_legendre_15(f, mid, b);
  const double refined = left + right;
  if (std::fabs(refined - whole) <= tol || depth >= opts.max_depth) {
    return refined;
  }
  return adaptive_gl_step(f, a, mid, left, 0.5 * tol, depth + 1, opts) +
         adaptive_gl_step(f, mid, b, right, 0.5 * tol, depth + 1, opts);
}

}  // namespace detail

/// Adaptive Gauss-Legendre with interval bisection. The tolerance is absolute;
/// each bisection halves the budget of its children.
template <typename F>
double integrate_adaptive(F&& f, double a, double b,
                          QuadratureOptions opts = {}) {
  if (a == b) return 0.0;
  const double whole = gauss_legendre_15(f, a, b);
  return detail::adaptive_gl_step(f, a, b, whole, opts.abs_tol, 0, opts);
}

}  // namespace mediumband
