// SPDX-License-Identifier: Apache-2.0
//
// mediumband: link-level simulation and BER analysis for mediumband wireless channels

#include <cmath>
#include <numbers>

#include <doctest.h>

#include "mediumband/pulse_math.hpp"
#include "mediumband/rng.hpp"
#include "oracles.hpp"

using namespace mediumband;

namespace {
const PulseSpec kSpec{0.22, 1.0};
}

TEST_SUITE_BEGIN("pulse_math");

TEST_CASE("rc pulse peak, zero crossings and evenness") {
  CHECK(rc_pulse(0.0, kSpec) == 1.0);
  double tail = 0.0;
  for (int k = 1; k <= 40; ++k) {
    tail += std::fabs(rc_pulse(k * kSpec.ts, kSpec));
  }
  CHECK(std::fabs(rc_pulse(3.0, kSpec)) < 1e-12);
  CHECK(tail < 1e-10);  // ISI-free sampling

  RandomStream rng(11);
  for (int i = 0; i < 50; ++i) {
    const double t = rng.uniform(-6.0, 6.0);
    CHECK(rc_pulse(t, kSpec) == rc_pulse(-t, kSpec));
  }
}

TEST_CASE("rc pulse removable singularity matches the numerical limit") {
  const double t_star = kSpec.ts / (2.0 * kSpec.beta);
  const double at = rc_pulse(t_star, kSpec);
  // Closed form of the limit.
  const double expected = kSpec.beta / 2.0 *
                          std::sin(std::numbers::pi / (2.0 * kSpec.beta));
  CHECK(at == doctest::Approx(expected).epsilon(1e-12));
  double prev_gap = 1.0;
  for (double eps : {1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8}) {
    const double gap = std::max(std::fabs(rc_pulse(t_star + eps, kSpec) - at),
                                std::fabs(rc_pulse(t_star - eps, kSpec) - at));
    CHECK(gap < prev_gap + 1e-15);
    prev_gap = gap;
  }
  CHECK(prev_gap < 1e-7);
}

TEST_CASE("autocorr fixed values") {
  CHECK(autocorr(0.0, kSpec) == doctest::Approx(1.0 - kSpec.beta / 4.0).epsilon(1e-15));
  const PulseSpec rect{0.0, 1.0};
  CHECK(std::fabs(autocorr(1.0, rect)) < 1e-15);  // sinc(1) = 0, beta = 0
}

TEST_CASE("autocorr evenness is exact") {
  RandomStream rng(12);
  for (int i = 0; i < 50; ++i) {
    const double tau = rng.uniform(-5.0, 5.0);
    CHECK(autocorr(tau, kSpec) == autocorr(-tau, kSpec));
  }
}

TEST_CASE("singular points") {
  const PulseSpec quarter{0.25, 1.0};
  CHECK(singular_points(quarter) == std::vector<double>{-4.0, -2.0, 2.0, 4.0});
  CHECK(singular_points(PulseSpec{0.0, 1.0}).empty());
  const auto pts = singular_points(kSpec);
  REQUIRE(pts.size() == 4);
  CHECK(pts[2] == doctest::Approx(1.0 / 0.44).epsilon(1e-15));
  CHECK(pts[3] == doctest::Approx(1.0 / 0.22).epsilon(1e-15));
}

TEST_CASE("autocorr continuity at the removable singularities") {
  for (double tau : singular_points(kSpec)) {
    const double at = autocorr(tau, kSpec);
    CHECK(std::fabs(autocorr(tau + 1e-9, kSpec) - at) < 1e-6);
    CHECK(std::fabs(autocorr(tau - 1e-9, kSpec) - at) < 1e-6);
  }
}

TEST_CASE("autocorr matches the deterministic pulse convolution") {
  for (double tau : {0.0, 0.3, 1.0, 1.7, 2.2727272727272727, 4.0}) {
    CHECK(autocorr(tau, kSpec) ==
          doctest::Approx(oracles::autocorr_by_convolution(tau, kSpec)).epsilon(5e-10));
  }
}

TEST_CASE("autocorr matches the random-stream time average" *
          doctest::timeout(600)) {
  // One long 64x-oversampled stream; 50 random lags in [0, 5 ts] plus the
  // tau = ts point, all accumulated in a single blockwise pass.
  RandomStream rng(2718);
  std::vector<int> lags{64};
  for (int i = 0; i < 50; ++i) {
    lags.push_back(static_cast<int>(rng.uniform(0.0, 5.0 * 64.0 + 0.999)));
  }
  const auto emp =
      oracles::empirical_autocorr_multi(lags, kSpec.beta, 1 << 22, 64, 314159);

  CHECK(std::fabs(emp[0] - autocorr(1.0, kSpec)) < 1e-3);
  for (std::size_t i = 1; i < lags.size(); ++i) {
    const double tau = lags[i] / 64.0;
    CHECK(std::fabs(emp[i] - autocorr(tau, kSpec)) < 2e-3);
  }
}

TEST_CASE("autocorr_grid agrees with scalar evaluation") {
  RandomStream rng(5);
  std::vector<double> out(700);
  for (int rep = 0; rep < 3; ++rep) {
    const double x0 = rng.uniform(-1.0, 1.0);
    const double dx = rep == 0 ? -1e-3 : rng.uniform(-2e-3, 2e-3);
    autocorr_grid(x0, dx, kSpec.beta, out);
    for (std::size_t i = 0; i < out.size(); i += 7) {
      const double x = x0 + dx * static_cast<double>(i);
      CHECK(out[i] == doctest::Approx(autocorr(x, kSpec)).epsilon(1e-11));
    }
  }
  // beta = 0 path
  autocorr_grid(0.25, 1e-3, 0.0, out);
  const PulseSpec rect{0.0, 1.0};
  CHECK(out[0] == doctest::Approx(autocorr(0.25, rect)).epsilon(1e-13));
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(PulseSpec{-0.1, 1.0}.validate(), std::invalid_argument);
  CHECK_THROWS_AS(PulseSpec{1.2, 1.0}.validate(), std::invalid_argument);
  CHECK_THROWS_AS(PulseSpec{0.22, 0.0}.validate(), std::invalid_argument);
  CHECK_NOTHROW(kSpec.validate());
}

TEST_SUITE_END();
