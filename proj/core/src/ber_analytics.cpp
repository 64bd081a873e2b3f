// SPDX-License-Identifier: Apache-2.0
//
// mediumband: link-level simulation and BER analysis for mediumband wireless channels

#include "mediumband/ber_analytics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mediumband/quadrature.hpp"

namespace mediumband {

namespace {

constexpr double kPi = std::numbers::pi;

// (xi - 1)/lambda1 in the algebraically reduced form K/(lambda0 - K*lambda1),
// finite for every valid parameter set including lambda1 = 0.
double xi_minus_one_over_lambda1(const BimodalParams& p) {
  return p.k / (p.lambda0() - p.k * p.lambda1());
}

}  // namespace

void ModulationParams::validate() const {
  if (!(rho1 > 0.0) || !(rho2 > 0.0)) {
    throw std::invalid_argument("ModulationParams: rho1 and rho2 must be > 0");
  }
}

double q_function(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double lower_bound(double gamma_bar, const BimodalParams& p,
                   const ModulationParams& m) {
  if (!(gamma_bar >= 0.0)) {
    throw std::invalid_argument("lower_bound: gamma_bar must be >= 0");
  }
  const double xi = p.xi();
  const double a = m.rho2 * p.lambda0() * p.lambda0() * gamma_bar;
  const double b = m.rho2 * p.lambda1() * p.lambda1() * gamma_bar;
  const double xim1 = xi - 1.0;
  const auto integrand = [&](double theta) {
    const double s = std::sin(theta);
    const double s2 = s * s;
    const double value =
        xi * s / std::sqrt(a + s2) - xim1 * s / std::sqrt(b + s2);
    return value * value;
  };
  return m.rho1 / kPi * integrate_adaptive(integrand, 0.0, 0.5 * kPi);
}

double asymptote(double gamma_bar, const BimodalParams& p,
                 const ModulationParams& m) {
  if (!(gamma_bar > 0.0)) {
    throw std::invalid_argument("asymptote: gamma_bar must be > 0");
  }
  const double slope = p.xi() / p.lambda0() - xi_minus_one_over_lambda1(p);
  return m.rho1 / (4.0 * m.rho2) * slope * slope / gamma_bar;
}

SeriesCoefficients series_coefficients(const BimodalParams& p,
                                       const ModulationParams& m) {
  const double l0 = p.lambda0();
  const double l1 = p.lambda1();
  const double k = p.k;
  const double d = l0 - k * l1;
  const double d2 = d * d;

  // 1/lambda^2 terms with the K-weighted trench contribution; the Gaussian
  // corner (K = 0, lambda1 = 0) zeroes them without a 0/0.
  const double inv_l0_2 = 1.0 / (l0 * l0);
  const double inv_l0_4 = inv_l0_2 * inv_l0_2;
  const double k_inv_l1_2 = (k == 0.0) ? 0.0 : k / (l1 * l1);
  const double k_inv_l1_4 = (k == 0.0) ? 0.0 : k / (l1 * l1 * l1 * l1);

  SeriesCoefficients c;
  c.gamma1 = m.rho1 * (1.0 - k) * (1.0 - k) / (4.0 * m.rho2 * d2);
  c.gamma2 = -3.0 * m.rho1 * (1.0 - k) / (16.0 * m.rho2 * m.rho2 * d2) *
             (inv_l0_2 - k_inv_l1_2);
  const double diff2 = inv_l0_2 - k_inv_l1_2;
  c.gamma3 = 5.0 * m.rho1 / (128.0 * m.rho2 * m.rho2 * m.rho2 * d2) *
             (diff2 * diff2 + 3.0 * (1.0 - k) * (inv_l0_4 - k_inv_l1_4));
  return c;
}

double series_eval(double gamma_bar, const SeriesCoefficients& c) {
  if (!(gamma_bar > 0.0)) {
    throw std::invalid_argument("series_eval: gamma_bar must be > 0");
  }
  const double inv = 1.0 / gamma_bar;
  return inv * (c.gamma1 + inv * (c.gamma2 + inv * c.gamma3));
}

double rayleigh_ber(double gamma_bar) {
  if (!(gamma_bar >= 0.0)) {
    throw std::invalid_argument("rayleigh_ber: gamma_bar must be >= 0");
  }
  return 0.5 * (1.0 - std::sqrt(gamma_bar / (1.0 + gamma_bar)));
}

double beta_moment(int n) {
  if (n < 0) throw std::invalid_argument("beta_moment: n must be >= 0");
  // 0.5 * B((n+1)/2, 1/2) via the gamma function.
  const double a = 0.5 * (n + 1);
  return 0.5 * std::tgamma(a) * std::tgamma(0.5) / std::tgamma(a + 0.5);
}

}  // namespace mediumband
