// SPDX-License-Identifier: Apache-2.0
//
// mediumband: link-level simulation and BER analysis for mediumband wireless channels

#pragma once

#include <span>
#include <vector>

namespace mediumband {

/// Raised-cosine pulse shape parameters. The combined SRRC transmit/receive
/// pair of the link is a single RC pulse, so this is the only pulse the
/// simulator needs.
struct PulseSpec {
  double beta = 0.22;  ///< roll-off factor, in [0, 1]
  double ts = 1.0;     ///< symbol period, seconds

  /// Throws std::invalid_argument if the roll-off or symbol period is out of
  /// range.
  void validate() const;
};

/// Half-width (in units of ts) of the window around a removable singularity
/// inside which evaluation switches to a local 4th-order Taylor expansion.
inline constexpr double kSingularityWindow = 1e-6;

/// Raised-cosine pulse g(t): g(0) = 1, g(k*ts) = 0 for nonzero integer k,
/// even in t. The removable singularity at |t| = ts/(2*beta) is evaluated by
/// its analytic limit.
double rc_pulse(double t, const PulseSpec& spec);

/// Autocorrelation R(tau) of the unit-symbol-power channel input process.
/// R(0) = 1 - beta/4; even in tau; removable singularities at
/// |tau| = ts/(2*beta) and |tau| = ts/beta evaluated by analytic limits.
double autocorr(double tau, const PulseSpec& spec);

/// Locations of the removable singularities of R, i.e. {+-ts/(2*beta),
/// +-ts/beta}, sorted ascending. Empty for beta = 0.
std::vector<double> singular_points(const PulseSpec& spec);

/// R evaluated on the uniform grid x0 + i*dx for i in [0, out.size()), with
/// times in units of ts. Uses phase-rotation recurrences instead of per-point
/// trig so that synchronization sweeps stay cheap; values match autocorr() to
/// ~1e-13.
void autocorr_grid(double x0, double dx, double beta, std::span<double> out);

}  // namespace mediumband
