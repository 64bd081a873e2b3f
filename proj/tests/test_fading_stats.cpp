// SPDX-License-Identifier: Apache-2.0
//
// mediumband: link-level simulation and BER analysis for mediumband wireless channels

#include <cmath>
#include <numbers>
#include <vector>

#include <doctest.h>

#include "mediumband/fading_stats.hpp"
#include "mediumband/quadrature.hpp"
#include "oracles.hpp"

using namespace mediumband;

TEST_SUITE_BEGIN("fading_stats");

TEST_CASE("gaussian corner of the density") {
  const BimodalParams p{0.0, std::sqrt(0.5), 0.0};
  for (double x : {0.0, 0.3, -0.9, 2.0}) {
    const double expected =
        std::exp(-x * x) / std::sqrt(2.0 * std::numbers::pi * 0.5);
    CHECK(pdf_marginal(x, p) == doctest::Approx(expected).epsilon(1e-14));
  }
  CHECK(second_moment(p) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("trench at the origin for the 20% row") {
  const auto p = BimodalParams::for_pds(20);
  const double f0 = pdf_marginal(0.0, p);
  CHECK(f0 < pdf_marginal(0.1, p));
  CHECK(f0 < pdf_marginal(-0.1, p));
  // Local minimum on a symmetric grid.
  for (double x = 0.01; x <= 0.05; x += 0.01) {
    CHECK(f0 < pdf_marginal(x, p));
  }
}

TEST_CASE("density normalization and symmetry") {
  for (int pds : {0, 20, 40, 60, 80}) {
    const auto p = BimodalParams::for_pds(pds);
    const double lim = 8.0 * p.lambda0();
    const double total = integrate_adaptive(
        [&](double x) { return pdf_marginal(x, p); }, -lim, lim, {1e-13, 32});
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(pdf_marginal(0.37, p) == pdf_marginal(-0.37, p));
  }
}

TEST_CASE("second moment against quadrature and sampling") {
  const auto p60 = BimodalParams::for_pds(60);
  const double lim = 10.0 * p60.lambda0();
  const double by_quad =
      2.0 * integrate_adaptive(
                [&](double x) { return x * x * pdf_marginal(x, p60); }, -lim,
                lim, {1e-13, 32});
  CHECK(second_moment(p60) == doctest::Approx(by_quad).epsilon(1e-9));

  const auto p80 = BimodalParams::for_pds(80);
  RandomStream rng(31);
  double mean = 0.0;
  const int n = 1000000;
  for (int i = 0; i < n; ++i) mean += std::norm(sample(p80, rng));
  CHECK(mean / n == doctest::Approx(second_moment(p80)).epsilon(0.01));
}

TEST_CASE("sampler matches the density") {
  SUBCASE("gaussian corner variance") {
    const BimodalParams p{0.0, std::sqrt(0.5), 0.0};
    RandomStream rng(32);
    double var = 0.0;
    const int n = 400000;
    for (int i = 0; i < n; ++i) {
      const auto h = sample(p, rng);
      var += h.real() * h.real();
    }
    CHECK(var / n == doctest::Approx(0.5).epsilon(0.01));
  }

  SUBCASE("Kolmogorov-Smirnov distance for the 40% row") {
    const auto p = BimodalParams::for_pds(40);
    RandomStream rng(33);
    std::vector<double> pooled;
    const int n = 1000000;
    pooled.reserve(2 * n);
    for (int i = 0; i < n; ++i) {
      const auto h = sample(p, rng);
      pooled.push_back(h.real());
      pooled.push_back(h.imag());
    }
    CHECK(oracles::ks_distance(std::move(pooled), p) < 0.002);
  }

  SUBCASE("second moment self-consistency") {
    const auto p = BimodalParams::for_pds(60);
    RandomStream rng(34);
    double mean = 0.0;
    const int n = 400000;
    for (int i = 0; i < n; ++i) mean += std::norm(sample(p, rng));
    CHECK(mean / n == doctest::Approx(second_moment(p)).epsilon(0.01));
  }
}

TEST_CASE("fit recovers its own parameters" * doctest::timeout(600)) {
  const auto truth = BimodalParams::for_pds(20);
  RandomStream rng(35);
  std::vector<std::complex<double>> samples(1000000);
  for (auto& s : samples) s = sample(truth, rng);
  const auto r = fit(samples);
  CHECK(r.converged);
  CHECK(r.params.k == doctest::Approx(truth.k).epsilon(0.10));
  CHECK(r.params.sigma_o * r.params.sigma_o ==
        doctest::Approx(truth.sigma_o * truth.sigma_o).epsilon(0.10));
  CHECK(r.params.sigma_i * r.params.sigma_i ==
        doctest::Approx(truth.sigma_i * truth.sigma_i).epsilon(0.10));
  CHECK(r.sample_count == samples.size());
}

TEST_CASE("fit flags the gaussian corner with a tiny trench") {
  RandomStream rng(36);
  std::vector<std::complex<double>> samples(200000);
  for (auto& s : samples) s = rng.complex_normal(1.0);  // variance 1/2 each part
  const auto r = fit(samples);
  CHECK(r.params.k < 0.05);
}

TEST_CASE("fit requires a large population") {
  std::vector<std::complex<double>> tiny(1000);
  CHECK_THROWS_AS(fit(tiny), std::invalid_argument);
}

TEST_CASE("degenerate collapse to the gaussian") {
  const BimodalParams p{1e-6, std::sqrt(0.5), 1e-6};
  const BimodalParams gauss{0.0, std::sqrt(0.5), 0.0};
  double sup = 0.0;
  for (double x = -4.0; x <= 4.0; x += 0.01) {
    sup = std::max(sup, std::fabs(pdf_marginal(x, p) - pdf_marginal(x, gauss)));
  }
  CHECK(sup < 1e-4);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS((BimodalParams{1.0, 0.7, 0.1}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((BimodalParams{-0.1, 0.7, 0.1}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((BimodalParams{0.2, 0.0, 0.1}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((BimodalParams{0.2, 0.7, -0.1}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((BimodalParams{0.2, 0.7, 0.0}.validate()), std::invalid_argument);
  CHECK_NOTHROW(BimodalParams::for_pds(60).validate());
  CHECK_NOTHROW((BimodalParams{0.0, 0.7, 0.0}.validate()));
  CHECK_THROWS_AS(BimodalParams::for_pds(33), std::invalid_argument);
}

TEST_CASE("fit report JSON") {
  FitResult r;
  r.params = BimodalParams::for_pds(40);
  r.nll = 123.5;
  r.sample_count = 7;
  r.converged = true;
  const auto text = fit_report_json(r);
  CHECK(text.find("\"sample_count\": 7") != std::string::npos);
  CHECK(text.find("\"nll\"") != std::string::npos);
  CHECK(text.find("\"sigma_o_sq\"") != std::string::npos);
}

TEST_SUITE_END();
