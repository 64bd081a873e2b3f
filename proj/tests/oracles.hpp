// SPDX-License-Identifier: Apache-2.0
//
// mediumband: link-level simulation and BER analysis for mediumband wireless channels
//
// Test-only oracles. Everything here recomputes spec quantities through an
// independent route (dense waveforms, brute-force grids, sampling) so the
// production formulas can be checked against them.

#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "mediumband/ber_analytics.hpp"
#include "mediumband/channel.hpp"
#include "mediumband/fading_stats.hpp"
#include "mediumband/pulse_math.hpp"
#include "mediumband/rng.hpp"

namespace mediumband::oracles {

/// Dense waveform Sum_m amps[m] g(t - m - delay) sampled at t = j/os for
/// j in [0, amps.size()*os). Pulse tails truncated at +-guard symbols.
/// Times in units of the symbol period.
std::vector<double> pulse_train(std::span<const double> amps, double delay,
                                double beta, int os, int guard);

/// Noiseless received waveform Sum_n gamma_n s(t - tau_n) on the same grid.
std::vector<std::complex<double>> multipath_waveform(
    std::span<const double> amps, const ChannelRealization& ch, double beta,
    int os, int guard);

/// Random +-1 amplitude stream.
std::vector<double> random_amps(std::size_t n, std::uint64_t seed);

/// Time-average estimates of R at several lags (in samples of the os grid)
/// from one long random stream, processed blockwise so memory stays flat.
std::vector<double> empirical_autocorr_multi(std::span<const int> lags,
                                             double beta,
                                             std::size_t n_symbols, int os,
                                             std::uint64_t seed);

/// Waveform regressions of r(t) onto the shifted templates
/// s(t - tau_hat - shift) for shift = 0, 1, 2: per-template least-squares
/// (matched-filter time averages), plus the residual power of the one-tap
/// model. Returns {h_hat[3], eta_sq_hat}.
struct WaveformRegression {
  std::array<std::complex<double>, 3> taps;
  double eta_sq = 0.0;
  double mean_power = 0.0;  ///< time-average of |r(t)|^2
};

WaveformRegression waveform_regression(const ChannelRealization& ch,
                                       double tau_hat, double beta,
                                       std::size_t n_symbols, int os,
                                       int guard, std::uint64_t seed);

/// Exhaustive fine-grid argmax of |h_o(tau)| over [0, max delay].
double brute_force_sync(const ChannelRealization& ch, const PulseSpec& spec,
                        double step);

/// Kolmogorov-Smirnov distance between sorted scalar samples and the
/// marginal CDF obtained by numeric integration of pdf_marginal.
double ks_distance(std::vector<double> values, const BimodalParams& p);

/// Monte Carlo estimate of E{rho1 Q(sqrt(rho2 gbar |h|^2))} using sample();
/// returns {estimate, standard error}.
std::pair<double, double> mc_lower_bound(const BimodalParams& p,
                                         const ModulationParams& m,
                                         double gamma_bar, std::size_t n,
                                         std::uint64_t seed);

/// Deterministic pulse-convolution route to R: (1/ts) Int g(t) g(t+tau) dt
/// by adaptive quadrature.
double autocorr_by_convolution(double tau, const PulseSpec& spec);

/// Independent single-frame simulation: literal triple-loop synthesis of the
/// symbol-rate samples and inline Method-1/Method-2 detection, sharing only
/// the RNG sub-seeding convention with the engine. Returns bit errors.
struct IndependentFrameResult {
  long long errors_m1 = 0;
  long long errors_m2 = 0;
  long long bits = 0;
};

IndependentFrameResult independent_frame(const ChannelRealization& ch,
                                         double tau_hat, const PulseSpec& pulse,
                                         std::span<const double> amps,
                                         std::span<const std::complex<double>> noise,
                                         int guard);

}  // namespace mediumband::oracles
