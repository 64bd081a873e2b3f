// SPDX-License-Identifier: Apache-2.0
//
// mediumband: link-level simulation and BER analysis for mediumband wireless channels

#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "mediumband/pulse_math.hpp"
#include "mediumband/rng.hpp"

namespace mediumband {

enum class GainProfile { uniform, exponential };

/// Statistical description of the NLoS multipath environment. All delays are
/// in units of the symbol period.
struct MultipathProfile {
  int n_paths = 10;
  double t_m = 0.6;  ///< delay spread, units of the symbol period
  GainProfile kind = GainProfile::uniform;
  double kappa = 0.0;  ///< exponential power decay rate; ignored for uniform

  /// Mean path powers w_n = E{alpha_n^2}; normalized so they sum to 1.
  /// Uniform: w_n = 1/N. Exponential: w_n proportional to exp(-2*kappa*n).
  std::vector<double> mean_power_weights() const;

  void validate() const;
};

/// One draw of the multipath channel. delays[0] == 0 (earliest path);
/// complex_gains[n] == gains[n] * exp(-j*phases[n]).
struct ChannelRealization {
  std::vector<double> delays;
  std::vector<double> gains;
  std::vector<double> phases;
  std::vector<std::complex<double>> complex_gains;

  int n_paths() const { return static_cast<int>(delays.size()); }
  double max_delay() const;
};

enum class SyncRule { max_h, earliest_path };

/// Fading quantities of one realization at a fixed synchronization instant.
struct FadingPoint {
  std::complex<double> h_o;
  double eta_o = 0.0;
  double tau_hat = 0.0;
  std::array<std::complex<double>, 3> taps{};
};

/// Draws tau_0 = 0, tau_n ~ U[0, t_m] for n >= 1, phi_n ~ U[0, 2*pi), and
/// Rayleigh gains with E{alpha_n^2} = w_n.
ChannelRealization sample_realization(const MultipathProfile& profile,
                                      RandomStream& rng);

/// Synchronization instant tau_hat in units of the symbol period.
/// max_h: grid argmax of |h_o(tau)| over [0, max delay] refined by
/// golden-section search to 1e-6*ts. earliest_path: tau_0 = 0.
/// grid_step is in seconds; 0 selects the default ts/1000 and values above
/// ts/100 are rejected.
double synchronize(const ChannelRealization& ch, const PulseSpec& spec,
                   SyncRule rule, double grid_step = 0.0);

/// h_o = Sum_n gamma_n R(tau_n - tau_hat) / (1 - beta/4).
std::complex<double> fading_h(const ChannelRealization& ch, double tau_hat,
                              const PulseSpec& spec);

/// Amplitude eta_o of the additive interference term. Throws
/// std::runtime_error if the radicand falls below -1e-12 (numerical
/// inconsistency); values in [-1e-12, 0) are clamped to 0.
double fading_eta(const ChannelRealization& ch, double tau_hat,
                  const PulseSpec& spec);

/// Symbol-spaced taps (h_v)_o = Sum_n gamma_n R(tau_n - tau_hat - (v-1)*ts)
/// / (1 - beta/4) for v = 1, 2, 3. taps[0] equals fading_h.
std::array<std::complex<double>, 3> fading_taps(const ChannelRealization& ch,
                                                double tau_hat,
                                                const PulseSpec& spec);

/// Narrowband fading factor g_o = Sum_n gamma_n.
std::complex<double> narrowband_g(const ChannelRealization& ch);

/// Convenience: synchronize + h_o + eta_o + taps in one call.
FadingPoint characterize(const ChannelRealization& ch, const PulseSpec& spec,
                         SyncRule rule, double grid_step = 0.0);

/// Percentage delay spread (t_m / t_s) * 100.
double pds_percent(double t_m, double t_s);

/// JSON record {"delays": [...], "gains": [...], "phases": [...]} for
/// regression-test fixtures.
std::string to_json(const ChannelRealization& ch);
ChannelRealization realization_from_json(const std::string& text);

}  // namespace mediumband
