// SPDX-License-Identifier: Apache-2.0
//
// mediumband: link-level simulation and BER analysis for mediumband wireless channels

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>

#include "mediumband/rng.hpp"

namespace mediumband {

/// Parameters of the bimodal marginal density of the mediumband fading
/// factor. K is the trench depth, sigma_o the outer scale and sigma_i the
/// trench width; sigma_i == 0 is the Gaussian corner and requires K == 0.
struct BimodalParams {
  double k = 0.0;
  double sigma_o = 0.70710678118654752;  // variance 1/2 per component
  double sigma_i = 0.0;

  double lambda0() const { return sigma_o; }
  double lambda1() const;  ///< sqrt(sigma_o^2 sigma_i^2 / (sigma_o^2 + sigma_i^2))
  double xi() const;       ///< lambda0 / (lambda0 - K*lambda1)

  /// Table-1 style presets keyed by percentage delay spread (0, 20, 40, 60,
  /// 80) for the kappa = 0, N = 10, beta = 0.22 environment.
  static BimodalParams for_pds(int pds_percent);

  /// Checks parameter ranges and the nonnegativity of the density on a grid.
  void validate() const;
};

/// Marginal density of one quadrature component; even in x, integrates to 1.
double pdf_marginal(double x, const BimodalParams& p);

/// E{|h|^2} = 2 (lambda0^3 - K lambda1^3) / (lambda0 - K lambda1).
double second_moment(const BimodalParams& p);

/// One complex fading value with independent real/imaginary parts drawn from
/// the marginal density by rejection against a Gaussian envelope of variance
/// lambda0^2 (acceptance probability 1 - K*lambda1/lambda0).
std::complex<double> sample(const BimodalParams& p, RandomStream& rng);

struct FitResult {
  BimodalParams params;
  double nll = 0.0;  ///< negative log-likelihood at the estimate
  std::size_t sample_count = 0;
  bool converged = false;
  int iterations = 0;  ///< objective evaluations spent
};

/// Maximum-likelihood fit of (K, sigma_o, sigma_i) to a population of complex
/// fading values, pooling real and imaginary parts. Box constraints
/// K in [0, 0.999], sigma_o and sigma_i in [1e-6, 10]. Derivative-free
/// bounded simplex with 5 jittered moment-matched restarts; when no restart
/// converges the best estimate so far is returned with converged = false.
/// Throws std::invalid_argument for fewer than 1e5 samples.
FitResult fit(std::span<const std::complex<double>> samples);

/// JSON report {"params": {...}, "nll": ..., "sample_count": ...}.
std::string fit_report_json(const FitResult& r);

}  // namespace mediumband
