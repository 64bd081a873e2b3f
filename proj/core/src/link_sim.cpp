// SPDX-License-Identifier: Apache-2.0
//
// mediumband: link-level simulation and BER analysis for mediumband wireless channels

#include "mediumband/link_sim.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "mediumband/scenario.hpp"

namespace mediumband {

namespace {

double slice(double delta) { return delta < 0.0 ? -1.0 : 1.0; }

double wilson_ci_halfwidth(long long errors, long long bits) {
  if (bits <= 0) return 0.0;
  const double p = static_cast<double>(errors) / static_cast<double>(bits);
  return 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(bits));
}

BerPoint finalize_point(double snr_linear, long long errors, long long bits) {
  BerPoint pt;
  pt.snr = snr_linear;
  pt.bit_errors = errors;
  pt.bits = bits;
  pt.ber = bits > 0 ? static_cast<double>(errors) / static_cast<double>(bits) : 0.0;
  if (errors == 0) {
    pt.one_sided = true;
    // Rule-of-three upper bound stands in for the symmetric interval.
    pt.ci_halfwidth = bits > 0 ? 3.0 / static_cast<double>(bits) : 0.0;
  } else {
    pt.ci_halfwidth = wilson_ci_halfwidth(errors, bits);
  }
  return pt;
}

struct FrameTally {
  long long errors_m1 = 0;
  long long errors_m2 = 0;
  long long bits = 0;
};

// One independent frame: realization, synchronization, transmission and
// detection, all drawn from a stream keyed by (seed, point, frame).
FrameTally simulate_frame(const LinkScenario& sc, double noise_var,
                          std::uint64_t point_index, std::uint64_t frame_index,
                          bool want_m1, bool want_m2) {
  auto rng = RandomStream::substream(sc.seed, point_index, frame_index);
  const auto ch = sample_realization(sc.profile, rng);
  const double tau_hat = synchronize(ch, sc.pulse, sc.sync_rule);
  const auto taps = fading_taps(ch, tau_hat, sc.pulse);

  const int len = sc.frame.frame_len;
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(len));
  for (auto& b : bits) b = rng.uniform() < 0.5 ? 0 : 1;
  const auto amps = modulate(bits);
  const auto r = received_samples(amps, ch, tau_hat, sc.pulse, sc.frame, 1.0,
                                  noise_var, rng);

  FrameTally tally;
  tally.bits = len;
  if (want_m1) {
    const auto dec = detect_method1(r, taps[0], 1.0);
    for (int k = 0; k < len; ++k) {
      if (dec[static_cast<std::size_t>(k)] !=
          amps[static_cast<std::size_t>(k)]) {
        ++tally.errors_m1;
      }
    }
  }
  if (want_m2) {
    const auto dec = detect_method2(r, taps, 1.0);
    for (int k = 0; k < len; ++k) {
      if (dec[static_cast<std::size_t>(k)] !=
          amps[static_cast<std::size_t>(k)]) {
        ++tally.errors_m2;
      }
    }
  }
  return tally;
}

int resolve_workers(int workers) {
  if (workers > 0) return workers;
  const unsigned hc = std::thread::hardware_concurrency();
  return static_cast<int>(std::clamp(hc, 1u, 8u));
}

// Runs one SNR point. Frames are processed in fixed-size batches; the stop
// rule is evaluated only at batch boundaries, and error/bit counts are
// integer sums, so the outcome does not depend on the worker count.
FrameTally run_point(const LinkScenario& sc, double noise_var,
                     std::uint64_t point_index, const StopRule& stop,
                     bool want_m1, bool want_m2, int workers) {
  constexpr long long kBatchFrames = 256;
  FrameTally total;
  std::uint64_t next_frame = 0;
  const auto done = [&] {
    if (total.bits >= stop.max_bits) return true;
    const long long gate_m1 = want_m1 ? total.errors_m1 : stop.min_errors;
    const long long gate_m2 = want_m2 ? total.errors_m2 : stop.min_errors;
    return gate_m1 >= stop.min_errors && gate_m2 >= stop.min_errors;
  };

  while (!done()) {
    const int nw = static_cast<int>(
        std::min<long long>(resolve_workers(workers), kBatchFrames));
    std::vector<FrameTally> partial(static_cast<std::size_t>(nw));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nw));
    for (int w = 0; w < nw; ++w) {
      pool.emplace_back([&, w] {
        FrameTally local;
        for (long long f = w; f < kBatchFrames; f += nw) {
          const auto t = simulate_frame(sc, noise_var, point_index,
                                        next_frame + static_cast<std::uint64_t>(f),
                                        want_m1, want_m2);
          local.errors_m1 += t.errors_m1;
          local.errors_m2 += t.errors_m2;
          local.bits += t.bits;
        }
        partial[static_cast<std::size_t>(w)] = local;
      });
    }
    for (auto& th : pool) th.join();
    for (const auto& p : partial) {
      total.errors_m1 += p.errors_m1;
      total.errors_m2 += p.errors_m2;
      total.bits += p.bits;
    }
    next_frame += kBatchFrames;
  }
  return total;
}

}  // namespace

void FrameConfig::validate() const {
  if (frame_len < 3) {
    throw std::invalid_argument("FrameConfig: frame length must be >= 3");
  }
  if (oversample < 16) {
    throw std::invalid_argument("FrameConfig: oversampling must be >= 16");
  }
  if (guard < 1) {
    throw std::invalid_argument("FrameConfig: guard must be >= 1");
  }
}

std::vector<double> modulate(std::span<const std::uint8_t> bits) {
  std::vector<double> amps(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] > 1) {
      throw std::invalid_argument("modulate: bits must be 0 or 1");
    }
    amps[i] = bits[i] ? 1.0 : -1.0;
  }
  return amps;
}

std::vector<std::complex<double>> received_samples(
    std::span<const double> amps, const ChannelRealization& ch, double tau_hat,
    const PulseSpec& pulse, const FrameConfig& cfg, double es, double noise_var,
    RandomStream& rng) {
  if (!(es > 0.0)) {
    throw std::invalid_argument("received_samples: es must be > 0");
  }
  if (noise_var < 0.0) {
    throw std::invalid_argument("received_samples: noise_var must be >= 0");
  }
  const int len = static_cast<int>(amps.size());
  const int guard = cfg.guard;
  const double sqrt_es = std::sqrt(es);

  // Composite symbol-spaced channel c_d = Sum_n gamma_n g(tau_hat + d - tau_n);
  // sampling the RC-shaped superposition at t = tau_hat + k*ts is exact, so
  // the frame reduces to an FIR convolution of the amplitudes with c.
  std::vector<std::complex<double>> c(static_cast<std::size_t>(2 * guard + 1));
  for (int d = -guard; d <= guard; ++d) {
    std::complex<double> acc{0.0, 0.0};
    for (int n = 0; n < ch.n_paths(); ++n) {
      const auto k = static_cast<std::size_t>(n);
      acc += ch.complex_gains[k] *
             rc_pulse((tau_hat + d - ch.delays[k]) * pulse.ts, pulse);
    }
    c[static_cast<std::size_t>(d + guard)] = acc;
  }

  std::vector<std::complex<double>> r(static_cast<std::size_t>(len));
  for (int k = 0; k < len; ++k) {
    std::complex<double> acc{0.0, 0.0};
    const int d_lo = std::max(-guard, k - len + 1);
    const int d_hi = std::min(guard, k);
    for (int d = d_lo; d <= d_hi; ++d) {
      acc += c[static_cast<std::size_t>(d + guard)] *
             amps[static_cast<std::size_t>(k - d)];
    }
    r[static_cast<std::size_t>(k)] = sqrt_es * acc;
  }
  if (noise_var > 0.0) {
    for (auto& v : r) v += rng.complex_normal(noise_var);
  }
  return r;
}

std::vector<double> detect_method1(std::span<const std::complex<double>> r,
                                   std::complex<double> h_o, double es) {
  if (h_o == std::complex<double>{0.0, 0.0}) {
    throw std::runtime_error("detect_method1: degenerate channel (h_o = 0)");
  }
  const double scale = 1.0 / (std::sqrt(es) * std::norm(h_o));
  std::vector<double> decisions(r.size());
  for (std::size_t k = 0; k < r.size(); ++k) {
    const double delta = (std::conj(h_o) * r[k]).real() * scale;
    decisions[k] = slice(delta);
  }
  return decisions;
}

std::vector<double> detect_method2(std::span<const std::complex<double>> r,
                                   const std::array<std::complex<double>, 3>& taps,
                                   double es) {
  if (taps[0] == std::complex<double>{0.0, 0.0}) {
    throw std::runtime_error("detect_method2: degenerate channel (h_1 = 0)");
  }
  const double sqrt_es = std::sqrt(es);
  const double scale = 1.0 / (sqrt_es * std::norm(taps[0]));
  std::vector<double> decisions(r.size());
  for (std::size_t k = 0; k < r.size(); ++k) {
    std::complex<double> inner = r[k];
    if (k >= 1) inner -= sqrt_es * taps[1] * decisions[k - 1];
    if (k >= 2) inner -= sqrt_es * taps[2] * decisions[k - 2];
    const double delta = (std::conj(taps[0]) * inner).real() * scale;
    decisions[k] = slice(delta);
  }
  return decisions;
}

std::vector<BerPoint> run_ber(const LinkScenario& scenario,
                              std::span<const double> snr_grid_db,
                              const StopRule& stop, int workers) {
  scenario.validate();
  const bool m1 = scenario.detector == Detector::method1;
  std::vector<BerPoint> points;
  points.reserve(snr_grid_db.size());
  for (std::size_t i = 0; i < snr_grid_db.size(); ++i) {
    const double gamma = std::pow(10.0, snr_grid_db[i] / 10.0);
    const double noise_var = (1.0 - scenario.pulse.beta / 4.0) / gamma;
    const auto tally =
        run_point(scenario, noise_var, i, stop, m1, !m1, workers);
    points.push_back(finalize_point(gamma, m1 ? tally.errors_m1 : tally.errors_m2,
                                    tally.bits));
  }
  return points;
}

std::pair<std::vector<BerPoint>, std::vector<BerPoint>> run_ber_paired(
    const LinkScenario& scenario, std::span<const double> snr_grid_db,
    const StopRule& stop, int workers) {
  scenario.validate();
  std::vector<BerPoint> pts1, pts2;
  pts1.reserve(snr_grid_db.size());
  pts2.reserve(snr_grid_db.size());
  for (std::size_t i = 0; i < snr_grid_db.size(); ++i) {
    const double gamma = std::pow(10.0, snr_grid_db[i] / 10.0);
    const double noise_var = (1.0 - scenario.pulse.beta / 4.0) / gamma;
    const auto tally = run_point(scenario, noise_var, i, stop, true, true, workers);
    pts1.push_back(finalize_point(gamma, tally.errors_m1, tally.bits));
    pts2.push_back(finalize_point(gamma, tally.errors_m2, tally.bits));
  }
  return {pts1, pts2};
}

void write_ber_csv(std::ostream& os, std::span<const BerPoint> points) {
  os << "snr_db,ber,errors,bits,ci\n";
  std::ostringstream line;
  line.precision(12);
  for (const auto& p : points) {
    line.str("");
    line << 10.0 * std::log10(p.snr) << ',' << p.ber << ',' << p.bit_errors
         << ',' << p.bits << ',' << p.ci_halfwidth << '\n';
    os << line.str();
  }
}

std::string ber_points_json(std::span<const BerPoint> points) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& p : points) {
    arr.push_back({{"snr_db", 10.0 * std::log10(p.snr)},
                   {"snr", p.snr},
                   {"ber", p.ber},
                   {"errors", p.bit_errors},
                   {"bits", p.bits},
                   {"ci_halfwidth", p.ci_halfwidth},
                   {"one_sided", p.one_sided}});
  }
  return arr.dump(2);
}

}  // namespace mediumband
