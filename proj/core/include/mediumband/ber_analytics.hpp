// SPDX-License-Identifier: Apache-2.0
//
// mediumband: link-level simulation and BER analysis for mediumband wireless channels

#pragma once

#include "mediumband/fading_stats.hpp"

namespace mediumband {

/// Modulation constants of the coherent-detection BER kernel
/// rho1 * Q(sqrt(rho2 * snr)).
struct ModulationParams {
  double rho1 = 1.0;
  double rho2 = 2.0;

  static ModulationParams bpsk() { return {1.0, 2.0}; }

  void validate() const;
};

/// Leading coefficients of the high-SNR series of the BER lower bound:
/// P = Gamma1/snr + Gamma2/snr^2 + Gamma3/snr^3 + ...
struct SeriesCoefficients {
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double gamma3 = 0.0;
};

/// Gaussian tail probability Q(x); Q(0) = 0.5, Q(-x) = 1 - Q(x).
double q_function(double x);

/// ISI-free BER lower bound for the bimodal fading density, evaluated by
/// adaptive Gauss-Legendre quadrature of the Craig-form integral over
/// [0, pi/2] (absolute tolerance 1e-12). Monotone nonincreasing in gamma_bar;
/// equals rho1/2 at gamma_bar = 0. All SNR values are linear.
double lower_bound(double gamma_bar, const BimodalParams& p,
                   const ModulationParams& m = ModulationParams::bpsk());

/// High-SNR tangent [rho1/(4 rho2)] (xi/lambda0 - (xi-1)/lambda1)^2 / gamma_bar.
/// The degenerate lambda1 = 0 corner uses (xi-1)/lambda1 = K/(lambda0 -
/// K*lambda1), which is finite for every valid parameter set.
double asymptote(double gamma_bar, const BimodalParams& p,
                 const ModulationParams& m = ModulationParams::bpsk());

/// Closed-form Gamma1..Gamma3 of the convergent series expansion.
SeriesCoefficients series_coefficients(
    const BimodalParams& p, const ModulationParams& m = ModulationParams::bpsk());

/// Gamma1/snr + Gamma2/snr^2 + Gamma3/snr^3.
double series_eval(double gamma_bar, const SeriesCoefficients& c);

/// BPSK over the unit-power Rayleigh narrowband channel:
/// 0.5 (1 - sqrt(gamma_bar / (1 + gamma_bar))).
double rayleigh_ber(double gamma_bar);

/// Sine-power moment Int_0^{pi/2} sin^n(theta) dtheta = 0.5 B((n+1)/2, 1/2),
/// exposed for the series reduction tests.
double beta_moment(int n);

}  // namespace mediumband
