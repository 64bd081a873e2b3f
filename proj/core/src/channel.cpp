// SPDX-License-Identifier: Apache-2.0
//
// mediumband: link-level simulation and BER analysis for mediumband wireless channels

#include "mediumband/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace mediumband {

namespace {

// Sum_n gamma_n R(tau_n - tau_hat - shift*ts) / (1 - beta/4); shift = v - 1
// gives the v-th symbol-spaced tap and shift = 0 recovers h_o.
std::complex<double> tap_sum(const ChannelRealization& ch, double tau_hat,
                             int shift, const PulseSpec& spec) {
  std::complex<double> acc{0.0, 0.0};
  for (int n = 0; n < ch.n_paths(); ++n) {
    const auto k = static_cast<std::size_t>(n);
    const double offset = (ch.delays[k] - tau_hat - shift) * spec.ts;
    acc += ch.complex_gains[k] * autocorr(offset, spec);
  }
  return acc / (1.0 - spec.beta / 4.0);
}

// |Sum_n gamma_n R(tau_n - tau)|; the 1 - beta/4 normalizer is irrelevant for
// the argmax.
double h_magnitude_at(const ChannelRealization& ch, double tau,
                      const PulseSpec& spec) {
  std::complex<double> acc{0.0, 0.0};
  for (int n = 0; n < ch.n_paths(); ++n) {
    const auto k = static_cast<std::size_t>(n);
    acc += ch.complex_gains[k] * autocorr((ch.delays[k] - tau) * spec.ts, spec);
  }
  return std::abs(acc);
}

}  // namespace

std::vector<double> MultipathProfile::mean_power_weights() const {
  std::vector<double> w(static_cast<std::size_t>(n_paths));
  if (kind == GainProfile::uniform || kappa == 0.0) {
    std::fill(w.begin(), w.end(), 1.0 / static_cast<double>(n_paths));
    return w;
  }
  double total = 0.0;
  for (int n = 0; n < n_paths; ++n) {
    w[static_cast<std::size_t>(n)] = std::exp(-2.0 * kappa * n);
    total += w[static_cast<std::size_t>(n)];
  }
  for (double& x : w) x /= total;
  return w;
}

void MultipathProfile::validate() const {
  if (n_paths < 1) {
    throw std::invalid_argument("MultipathProfile: need at least one path");
  }
  if (!(t_m >= 0.0)) {
    throw std::invalid_argument("MultipathProfile: delay spread must be >= 0");
  }
  if (!(kappa >= 0.0)) {
    throw std::invalid_argument("MultipathProfile: kappa must be >= 0");
  }
}

double ChannelRealization::max_delay() const {
  return delays.empty() ? 0.0 : *std::max_element(delays.begin(), delays.end());
}

ChannelRealization sample_realization(const MultipathProfile& profile,
                                      RandomStream& rng) {
  profile.validate();
  const auto w = profile.mean_power_weights();
  const int n = profile.n_paths;

  ChannelRealization ch;
  ch.delays.resize(static_cast<std::size_t>(n));
  ch.gains.resize(static_cast<std::size_t>(n));
  ch.phases.resize(static_cast<std::size_t>(n));
  ch.complex_gains.resize(static_cast<std::size_t>(n));

  for (int i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    ch.delays[k] = (i == 0) ? 0.0 : rng.uniform(0.0, profile.t_m);
    ch.gains[k] = rng.rayleigh(w[k]);
    ch.phases[k] = rng.angle();
    ch.complex_gains[k] = std::polar(ch.gains[k], -ch.phases[k]);
  }
  return ch;
}

double synchronize(const ChannelRealization& ch, const PulseSpec& spec,
                   SyncRule rule, double grid_step) {
  if (rule == SyncRule::earliest_path) return 0.0;
  if (grid_step == 0.0) grid_step = spec.ts / 1000.0;
  if (!(grid_step > 0.0) || grid_step > spec.ts / 100.0) {
    throw std::invalid_argument("synchronize: grid step must be in (0, ts/100]");
  }

  const double t_m = ch.max_delay();
  if (t_m <= 0.0) return 0.0;

  const double step = grid_step / spec.ts;  // grid in units of ts
  const double span = t_m;                  // delays are already in ts units
  const int count = static_cast<int>(std::floor(span / step)) + 1;

  // Vectorized magnitude sweep: accumulate gamma_n * R(tau_n - tau_j) per
  // path along the grid.
  std::vector<double> r_vals(static_cast<std::size_t>(count));
  std::vector<double> acc_re(static_cast<std::size_t>(count), 0.0);
  std::vector<double> acc_im(static_cast<std::size_t>(count), 0.0);
  for (int n = 0; n < ch.n_paths(); ++n) {
    const auto k = static_cast<std::size_t>(n);
    autocorr_grid(ch.delays[k], -step, spec.beta, r_vals);
    const double gre = ch.complex_gains[k].real();
    const double gim = ch.complex_gains[k].imag();
    for (int j = 0; j < count; ++j) {
      const auto u = static_cast<std::size_t>(j);
      acc_re[u] += gre * r_vals[u];
      acc_im[u] += gim * r_vals[u];
    }
  }
  int best = 0;
  double best_mag = -1.0;
  for (int j = 0; j < count; ++j) {
    const auto u = static_cast<std::size_t>(j);
    const double mag = acc_re[u] * acc_re[u] + acc_im[u] * acc_im[u];
    if (mag > best_mag) {
      best_mag = mag;
      best = j;
    }
  }

  // Golden-section refinement within one grid cell either side of the argmax.
  double lo = std::max(0.0, (best - 1) * step);
  double hi = std::min(span, (best + 1) * step);
  if (hi <= lo) return lo;
  constexpr double kInvPhi = 0.6180339887498949;
  const double tol = 1e-6;  // units of ts
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = h_magnitude_at(ch, x1, spec);
  double f2 = h_magnitude_at(ch, x2, spec);
  while (hi - lo > tol) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = h_magnitude_at(ch, x2, spec);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = h_magnitude_at(ch, x1, spec);
    }
  }
  return 0.5 * (lo + hi);
}

std::complex<double> fading_h(const ChannelRealization& ch, double tau_hat,
                              const PulseSpec& spec) {
  return tap_sum(ch, tau_hat, 0, spec);
}

double fading_eta(const ChannelRealization& ch, double tau_hat,
                  const PulseSpec& spec) {
  const double energy_scale = 1.0 - spec.beta / 4.0;
  double sum_gain_sq = 0.0;
  for (int n = 0; n < ch.n_paths(); ++n) {
    sum_gain_sq += std::norm(ch.complex_gains[static_cast<std::size_t>(n)]);
  }
  const std::complex<double> h = fading_h(ch, tau_hat, spec);

  std::complex<double> cross{0.0, 0.0};
  for (int n = 0; n < ch.n_paths(); ++n) {
    for (int m = 0; m < ch.n_paths(); ++m) {
      if (m == n) continue;
      const auto kn = static_cast<std::size_t>(n);
      const auto km = static_cast<std::size_t>(m);
      cross += ch.complex_gains[kn] * std::conj(ch.complex_gains[km]) *
               autocorr((ch.delays[kn] - ch.delays[km]) * spec.ts, spec);
    }
  }
  if (std::fabs(cross.imag()) > 1e-10) {
    throw std::runtime_error(
        "fading_eta: cross term has non-negligible imaginary part");
  }

  double radicand =
      energy_scale * (sum_gain_sq - std::norm(h)) + cross.real();
  if (radicand < -1e-12) {
    throw std::runtime_error(
        "fading_eta: negative radicand beyond rounding guard");
  }
  if (radicand < 0.0) radicand = 0.0;
  return std::sqrt(radicand);
}

std::array<std::complex<double>, 3> fading_taps(const ChannelRealization& ch,
                                                double tau_hat,
                                                const PulseSpec& spec) {
  return {tap_sum(ch, tau_hat, 0, spec), tap_sum(ch, tau_hat, 1, spec),
          tap_sum(ch, tau_hat, 2, spec)};
}

std::complex<double> narrowband_g(const ChannelRealization& ch) {
  std::complex<double> acc{0.0, 0.0};
  for (const auto& g : ch.complex_gains) acc += g;
  return acc;
}

FadingPoint characterize(const ChannelRealization& ch, const PulseSpec& spec,
                         SyncRule rule, double grid_step) {
  FadingPoint fp;
  fp.tau_hat = synchronize(ch, spec, rule, grid_step);
  fp.taps = fading_taps(ch, fp.tau_hat, spec);
  fp.h_o = fp.taps[0];
  fp.eta_o = fading_eta(ch, fp.tau_hat, spec);
  return fp;
}

double pds_percent(double t_m, double t_s) {
  if (!(t_s > 0.0)) {
    throw std::invalid_argument("pds_percent: symbol period must be positive");
  }
  return t_m / t_s * 100.0;
}

std::string to_json(const ChannelRealization& ch) {
  nlohmann::json j;
  j["delays"] = ch.delays;
  j["gains"] = ch.gains;
  j["phases"] = ch.phases;
  return j.dump();
}

ChannelRealization realization_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  ChannelRealization ch;
  ch.delays = j.at("delays").get<std::vector<double>>();
  ch.gains = j.at("gains").get<std::vector<double>>();
  ch.phases = j.at("phases").get<std::vector<double>>();
  if (ch.delays.size() != ch.gains.size() ||
      ch.delays.size() != ch.phases.size()) {
    throw std::invalid_argument(
        "realization_from_json: field lengths disagree");
  }
  ch.complex_gains.resize(ch.delays.size());
  for (std::size_t n = 0; n < ch.delays.size(); ++n) {
    ch.complex_gains[n] = std::polar(ch.gains[n], -ch.phases[n]);
  }
  return ch;
}

}  // namespace mediumband
