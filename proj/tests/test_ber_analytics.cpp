// SPDX-License-Identifier: Apache-2.0
//
// mediumband: link-level simulation and BER analysis for mediumband wireless channels

#include <cmath>
#include <numbers>
#include <vector>

#include <doctest.h>

#include "mediumband/ber_analytics.hpp"
#include "mediumband/quadrature.hpp"
#include "oracles.hpp"

using namespace mediumband;

namespace {
const BimodalParams kRayleighEquivalent{0.0, std::sqrt(0.5), 0.0};
}

TEST_SUITE_BEGIN("ber_analytics");

TEST_CASE("q_function") {
  CHECK(q_function(0.0) == 0.5);
  CHECK(q_function(1.0) == doctest::Approx(0.15865525393146).epsilon(1e-11));
  const double tail = q_function(40.0);
  CHECK(std::isfinite(tail));
  CHECK(tail >= 0.0);
  CHECK(tail < 1e-300);
  for (double x : {0.3, 1.7, 4.0}) {
    CHECK(q_function(-x) == doctest::Approx(1.0 - q_function(x)).epsilon(1e-13));
  }
}

TEST_CASE("adaptive quadrature engine") {
  const double s = integrate_adaptive(
      [](double x) { return std::sin(x); }, 0.0, std::numbers::pi);
  CHECK(s == doctest::Approx(2.0).epsilon(1e-13));
  const double poly = integrate_adaptive(
      [](double x) { return 5.0 * x * x * x * x; }, -1.0, 2.0);
  CHECK(poly == doctest::Approx(33.0).epsilon(1e-13));
  CHECK(integrate_adaptive([](double) { return 1.0; }, 2.0, 2.0) == 0.0);
}

TEST_CASE("lower bound limits and reduction") {
  CHECK(lower_bound(0.0, BimodalParams::for_pds(60)) ==
        doctest::Approx(0.5).epsilon(1e-12));

  for (double g : {0.1, 1.0, 10.0, 100.0, 1000.0, 10000.0}) {
    CHECK(std::fabs(lower_bound(g, kRayleighEquivalent) - rayleigh_ber(g)) <
          1e-9);
  }
  CHECK(lower_bound(10.0, kRayleighEquivalent) ==
        doctest::Approx(0.0232687).epsilon(1e-5));
}

TEST_CASE("lower bound is strictly decreasing in SNR") {
  const auto p = BimodalParams::for_pds(60);
  double prev = lower_bound(std::pow(10.0, -0.5), p);
  for (double db = 0.0; db <= 44.0; db += 1.0) {
    const double cur = lower_bound(std::pow(10.0, db / 10.0), p);
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("lower bound against the sampling cross-check" *
          doctest::timeout(300)) {
  const auto p = BimodalParams::for_pds(60);
  const auto [mc, se] =
      oracles::mc_lower_bound(p, ModulationParams::bpsk(), 100.0, 10000000, 41);
  const double lb = lower_bound(100.0, p);
  CHECK(std::fabs(lb - mc) < 3.0 * se);
}

TEST_CASE("asymptote") {
  // Narrowband coefficient 1/4 at unit SNR.
  CHECK(asymptote(1.0, kRayleighEquivalent) == doctest::Approx(0.25).epsilon(1e-14));

  for (int pds : {20, 40, 60, 80}) {
    const auto p = BimodalParams::for_pds(pds);
    const auto c = series_coefficients(p);
    CHECK(std::fabs(asymptote(1.0, p) - c.gamma1) < 1e-14);
  }

  const auto p80 = BimodalParams::for_pds(80);
  CHECK(lower_bound(1e10, p80) / asymptote(1e10, p80) ==
        doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("series coefficients at the narrowband corner") {
  const auto c = series_coefficients(kRayleighEquivalent);
  CHECK(std::fabs(c.gamma1 - 0.25) < 1e-12);
  CHECK(std::fabs(c.gamma2 + 0.1875) < 1e-12);
  CHECK(std::fabs(c.gamma3 - 0.15625) < 1e-12);
}

TEST_CASE("series tracks the quadrature bound at high SNR") {
  for (int pds : {20, 40, 60, 80}) {
    const auto p = BimodalParams::for_pds(pds);
    const auto c = series_coefficients(p);
    for (double g : {1e4, 1e5, 1e6}) {
      const double lb = lower_bound(g, p);
      CHECK(std::fabs(series_eval(g, c) - lb) / lb < 0.01);
    }
  }
}

TEST_CASE("leading coefficient decays with the delay spread") {
  double prev = series_coefficients(BimodalParams::for_pds(20)).gamma1;
  for (int pds : {40, 60, 80}) {
    const double g1 = series_coefficients(BimodalParams::for_pds(pds)).gamma1;
    CHECK(g1 < prev);
    prev = g1;
  }
}

TEST_CASE("series_eval") {
  CHECK(series_eval(2.0, {1.0, 0.0, 0.0}) == 0.5);

  const auto c = series_coefficients(kRayleighEquivalent);
  // Against the closed-form narrowband expansion at moderate SNR.
  CHECK(std::fabs(series_eval(100.0, c) - rayleigh_ber(100.0)) < 2e-8);
  // Leading-order dominance.
  const double g = 1e8;
  CHECK(series_eval(g, c) / (c.gamma1 / g) == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("rayleigh baseline") {
  CHECK(rayleigh_ber(0.0) == 0.5);
  CHECK(rayleigh_ber(1.0) == doctest::Approx(0.146447).epsilon(1e-5));
  CHECK(rayleigh_ber(1000.0) == doctest::Approx(1.0 / 4000.0).epsilon(0.002));
}

TEST_CASE("beta moment") {
  CHECK(beta_moment(0) == doctest::Approx(std::numbers::pi / 2.0).epsilon(1e-14));
  CHECK(beta_moment(2) == doctest::Approx(std::numbers::pi / 4.0).epsilon(1e-14));
  CHECK(beta_moment(5) == doctest::Approx(8.0 / 15.0).epsilon(1e-13));
  // Quadrature oracle.
  for (int n : {1, 3, 4, 6, 7}) {
    const double direct = integrate_adaptive(
        [n](double t) { return std::pow(std::sin(t), n); }, 0.0,
        std::numbers::pi / 2.0);
    CHECK(beta_moment(n) == doctest::Approx(direct).epsilon(1e-12));
  }
  // Wallis recurrence.
  for (int n = 2; n <= 12; ++n) {
    CHECK(beta_moment(n) ==
          doctest::Approx((n - 1.0) / n * beta_moment(n - 2)).epsilon(1e-13));
  }
  CHECK_THROWS_AS(beta_moment(-1), std::invalid_argument);
}

TEST_CASE("argument validation") {
  CHECK_THROWS_AS(lower_bound(-1.0, kRayleighEquivalent), std::invalid_argument);
  CHECK_THROWS_AS(asymptote(0.0, kRayleighEquivalent), std::invalid_argument);
  CHECK_THROWS_AS(rayleigh_ber(-0.5), std::invalid_argument);
  CHECK_THROWS_AS(series_eval(0.0, {1.0, 0.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS((ModulationParams{0.0, 2.0}.validate()), std::invalid_argument);
}

TEST_SUITE_END();
