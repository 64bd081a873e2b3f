// SPDX-License-Identifier: Apache-2.0
//
// mediumband: link-level simulation and BER analysis for mediumband wireless channels

#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mediumband/channel.hpp"
#include "mediumband/pulse_math.hpp"
#include "mediumband/rng.hpp"

namespace mediumband {

struct LinkScenario;  // scenario.hpp

/// Frame-level simulation knobs. The roll-off lives in PulseSpec.
struct FrameConfig {
  int frame_len = 100;  ///< bits per frame (BPSK: one bit per symbol)
  int oversample = 64;  ///< waveform grid density for oracle/diagnostic use
  int guard = 16;       ///< pulse truncation, symbol periods each side

  void validate() const;
};

enum class Detector { method1, method2 };

/// One point of a BER sweep. snr is the linear average SNR.
struct BerPoint {
  double snr = 0.0;
  long long bit_errors = 0;
  long long bits = 0;
  double ber = 0.0;
  double ci_halfwidth = 0.0;  ///< 95% normal-approximation half-width
  bool one_sided = false;     ///< set when no errors were observed
};

struct StopRule {
  long long min_errors = 200;
  long long max_bits = 100000000;
};

/// BPSK map 0 -> -1, 1 -> +1.
std::vector<double> modulate(std::span<const std::uint8_t> bits);

/// Symbol-rate received samples r'(k) for one frame: the noiseless
/// superposition of RC-shaped symbols over the multipath realization sampled
/// at t = tau_hat + k*ts, plus complex AWGN of total variance noise_var per
/// sample. Pulse tails are truncated at +-cfg.guard symbol periods.
std::vector<std::complex<double>> received_samples(
    std::span<const double> amps, const ChannelRealization& ch, double tau_hat,
    const PulseSpec& pulse, const FrameConfig& cfg, double es, double noise_var,
    RandomStream& rng);

/// Matched-filter symbol-by-symbol detection with genie h_o. Ties at the
/// slicer resolve to +1. Throws std::runtime_error for h_o == 0.
std::vector<double> detect_method1(std::span<const std::complex<double>> r,
                                   std::complex<double> h_o, double es);

/// 3-tap successive interference cancellation with genie taps: the first
/// symbol is sliced without cancellation, the second cancels one tap, later
/// symbols cancel two, using hard decisions already made in the frame.
std::vector<double> detect_method2(std::span<const std::complex<double>> r,
                                   const std::array<std::complex<double>, 3>& taps,
                                   double es);

/// Monte Carlo BER sweep over an SNR grid in dB. Each grid point draws
/// independent realizations until stop.min_errors errors or stop.max_bits
/// bits. Frames are sub-seeded from (scenario.seed, point index, frame index),
/// so results are bit-identical for any worker count; workers = 0 picks a
/// machine default.
std::vector<BerPoint> run_ber(const LinkScenario& scenario,
                              std::span<const double> snr_grid_db,
                              const StopRule& stop, int workers = 0);

/// As run_ber, but detects every frame with both methods so the two BER
/// columns are paired sample-by-sample; a point stops once both detectors
/// have min_errors errors (or at max_bits).
std::pair<std::vector<BerPoint>, std::vector<BerPoint>> run_ber_paired(
    const LinkScenario& scenario, std::span<const double> snr_grid_db,
    const StopRule& stop, int workers = 0);

/// CSV body with columns snr_db, ber, errors, bits, ci.
void write_ber_csv(std::ostream& os, std::span<const BerPoint> points);

/// JSON array of point records.
std::string ber_points_json(std::span<const BerPoint> points);

}  // namespace mediumband
