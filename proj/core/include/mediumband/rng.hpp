// SPDX-License-Identifier: Apache-2.0
//
// mediumband: link-level simulation and BER analysis for mediumband wireless channels

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

namespace mediumband {

/// Deterministic random stream with the handful of draws the simulator needs.
///
/// All floating-point draws are derived from the raw 64-bit output of a
/// mt19937_64 through fixed arithmetic, so sequences are reproducible
/// bit-for-bit across standard libraries (std::*_distribution would not be).
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : gen_(seed) {}

  /// Independent stream for a (stream, index) work item under a master seed.
  /// Used to hand each Monte Carlo task its own generator so that results do
  /// not depend on scheduling order or worker count.
  static RandomStream substream(std::uint64_t master_seed, std::uint64_t stream,
                                std::uint64_t index) {
    std::uint64_t s = mix(master_seed ^ mix(stream + 0x9e3779b97f4a7c15ULL));
    s = mix(s ^ mix(index + 0xbf58476d1ce4e5b9ULL));
    return RandomStream(s);
  }

  /// Uniform on [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1]; safe as a log() argument.
  double uniform_pos() { return 1.0 - uniform(); }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform angle in [0, 2*pi).
  double angle() { return 2.0 * std::numbers::pi * uniform(); }

  /// Standard normal via Box-Muller; the second deviate of each pair is cached.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform_pos()));
    const double phi = angle();
    spare_ = r * std::sin(phi);
    has_spare_ = true;
    return r * std::cos(phi);
  }

  /// Rayleigh amplitude with E{x^2} = mean_square.
  double rayleigh(double mean_square) {
    return std::sqrt(-mean_square * std::log(uniform_pos()));
  }

  /// Circular complex Gaussian with E{|z|^2} = variance.
  std::complex<double> complex_normal(double variance) {
    const double s = std::sqrt(variance / 2.0);
    const double re = s * normal();
    const double im = s * normal();
    return {re, im};
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {  // splitmix64 finalizer
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace mediumband
