// SPDX-License-Identifier: Apache-2.0
//
// mediumband: link-level simulation and BER analysis for mediumband wireless channels

#include "mediumband/pulse_math.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace mediumband {

namespace {

constexpr double kPi = std::numbers::pi;

// sin(pi*x)/(pi*x), sinc(0) = 1.
double sinc(double x) {
  const double px = kPi * x;
  if (std::fabs(px) < 1e-8) return 1.0 - px * px / 6.0;
  return std::sin(px) / px;
}

// cos(pi*x/2) / (1 - x^2), even in x, with a removable singularity at
// |x| = 1. Within `window` of the singularity a 4th-order Taylor expansion in
// u = |x| - 1 is used:
//   f(1+u) = (pi/4) * (1 - u/2 + (1/4 - pi^2/24) u^2
//            + (pi^2/48 - 1/8) u^3 + (1/16 - pi^2/96 + pi^4/1920) u^4)
double cos_half_ratio(double x, double window) {
  x = std::fabs(x);
  const double u = x - 1.0;
  if (std::fabs(u) < window) {
    constexpr double c2 = 0.25 - kPi * kPi / 24.0;
    constexpr double c3 = kPi * kPi / 48.0 - 0.125;
    constexpr double c4 = 0.0625 - kPi * kPi / 96.0 +
                          kPi * kPi * kPi * kPi / 1920.0;
    return 0.25 * kPi *
           (1.0 + u * (-0.5 + u * (c2 + u * (c3 + u * c4))));
  }
  return std::cos(0.5 * kPi * x) / (1.0 - x * x);
}

// sinc(x) / (1 - x^2), even in x, removable singularity at |x| = 1. Near the
// singularity the expansion in u = |x| - 1 is
//   f(1+u) = (1/2) * (1 - 3u/2 + (7/4 - pi^2/6) u^2
//            + (pi^2/4 - 15/8) u^3 + (31/16 - 7 pi^2/24 + pi^4/120) u^4)
double sinc_ratio(double x, double window) {
  x = std::fabs(x);
  const double u = x - 1.0;
  if (std::fabs(u) < window) {
    constexpr double c2 = 1.75 - kPi * kPi / 6.0;
    constexpr double c3 = kPi * kPi / 4.0 - 1.875;
    constexpr double c4 = 31.0 / 16.0 - 7.0 * kPi * kPi / 24.0 +
                          kPi * kPi * kPi * kPi / 120.0;
    return 0.5 * (1.0 + u * (-1.5 + u * (c2 + u * (c3 + u * c4))));
  }
  return sinc(x) / (1.0 - x * x);
}

// R for a time offset already normalized to units of ts.
double autocorr_normalized(double x, double beta) {
  x = std::fabs(x);
  const double term1 = sinc(x) * cos_half_ratio(2.0 * beta * x,
                                                2.0 * beta * kSingularityWindow);
  if (beta == 0.0) return term1;
  const double term2 = 0.25 * beta * std::cos(kPi * x) *
                       sinc_ratio(beta * x, beta * kSingularityWindow);
  return term1 - term2;
}

}  // namespace

void PulseSpec::validate() const {
  if (!(beta >= 0.0 && beta <= 1.0)) {
    throw std::invalid_argument("PulseSpec: roll-off must be in [0, 1]");
  }
  if (!(ts > 0.0)) {
    throw std::invalid_argument("PulseSpec: symbol period must be positive");
  }
}

double rc_pulse(double t, const PulseSpec& spec) {
  const double x = std::fabs(t / spec.ts);
  return sinc(x) * cos_half_ratio(2.0 * spec.beta * x,
                                  2.0 * spec.beta * kSingularityWindow);
}

double autocorr(double tau, const PulseSpec& spec) {
  return autocorr_normalized(tau / spec.ts, spec.beta);
}

std::vector<double> singular_points(const PulseSpec& spec) {
  if (spec.beta == 0.0) return {};
  const double a = spec.ts / (2.0 * spec.beta);
  const double b = spec.ts / spec.beta;
  return {-b, -a, a, b};
}

void autocorr_grid(double x0, double dx, double beta, std::span<double> out) {
  if (out.empty()) return;
  if (beta == 0.0) {
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] = sinc(x0 + dx * static_cast<double>(i));
    }
    return;
  }

  // Rotating phasors carry sin/cos of pi*x and pi*beta*x across the grid; the
  // recurrence is restarted periodically to stop rounding drift.
  constexpr int kRestart = 64;
  const std::complex<double> step1 = std::polar(1.0, kPi * dx);
  const std::complex<double> step2 = std::polar(1.0, kPi * beta * dx);
  std::complex<double> p1{1.0, 0.0};
  std::complex<double> p2{1.0, 0.0};
  const double window1 = 2.0 * beta * kSingularityWindow;
  const double window2 = beta * kSingularityWindow;

  for (std::size_t i = 0; i < out.size(); ++i) {
    const double x = x0 + dx * static_cast<double>(i);
    if (i % kRestart == 0) {
      p1 = std::polar(1.0, kPi * x);
      p2 = std::polar(1.0, kPi * beta * x);
    }
    const double ax = std::fabs(x);
    const double y1 = 2.0 * beta * ax;
    const double y2 = beta * ax;
    // Fall back to the scalar path near x = 0 and near the removable
    // singularities, where the rational forms below lose their validity.
    if (ax < 1e-7 || std::fabs(y1 - 1.0) < window1 ||
        std::fabs(y2 - 1.0) < window2) {
      out[i] = autocorr_normalized(x, beta);
    } else {
      const double sin_pix = p1.imag();
      const double cos_pix = p1.real();
      const double cos_pibx = p2.real();
      const double sin_pibx = p2.imag();
      const double term1 = (sin_pix / (kPi * x)) * cos_pibx / (1.0 - y1 * y1);
      // sinc(beta*x) needs sin(pi*beta*x), shared with the phasor.
      const double term2 = 0.25 * beta * cos_pix *
                           (sin_pibx / (kPi * beta * x)) / (1.0 - y2 * y2);
      out[i] = term1 - term2;
    }
    p1 *= step1;
    p2 *= step2;
  }
}

}  // namespace mediumband
