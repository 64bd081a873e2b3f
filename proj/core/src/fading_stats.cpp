// SPDX-License-Identifier: Apache-2.0
//
// mediumband: link-level simulation and BER analysis for mediumband wireless channels

#include "mediumband/fading_stats.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <nlohmann/json.hpp>

namespace mediumband {

namespace {

constexpr double kSqrt2Pi = 2.5066282746310002;

struct Bounds {
  double lo[3];
  double hi[3];
};

constexpr Bounds kFitBox{{0.0, 1e-6, 1e-6}, {0.999, 10.0, 10.0}};

double clamp_to(double x, double lo, double hi) {
  return std::min(std::max(x, lo), hi);
}

// Nelder-Mead on a 3-parameter objective with box projection. Returns the
// best vertex; `converged` reports whether the f-spread tolerance was met
// before the evaluation budget ran out.
struct SimplexResult {
  std::array<double, 3> x;
  double f = 0.0;
  int evals = 0;
  bool converged = false;
};

SimplexResult nelder_mead(const std::function<double(const std::array<double, 3>&)>& f,
                          std::array<double, 3> x0, const Bounds& box,
                          int max_evals, double ftol) {
  constexpr int kDim = 3;
  auto project = [&](std::array<double, 3> p) {
    for (int i = 0; i < kDim; ++i) p[i] = clamp_to(p[i], box.lo[i], box.hi[i]);
    return p;
  };

  std::array<std::array<double, 3>, kDim + 1> verts;
  std::array<double, kDim + 1> fv;
  int evals = 0;

  verts[0] = project(x0);
  fv[0] = f(verts[0]);
  ++evals;
  for (int i = 0; i < kDim; ++i) {
    auto v = verts[0];
    const double step = (v[i] != 0.0) ? 0.12 * std::fabs(v[i]) : 0.05;
    v[i] += step;
    verts[i + 1] = project(v);
    fv[i + 1] = f(verts[i + 1]);
    ++evals;
  }

  bool converged = false;
  while (evals < max_evals) {
    // Order vertices by objective.
    std::array<int, kDim + 1> idx{0, 1, 2, 3};
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return fv[a] < fv[b]; });
    const int best = idx[0], second_worst = idx[kDim - 1], worst = idx[kDim];

    if (std::fabs(fv[worst] - fv[best]) <=
        ftol * (std::fabs(fv[best]) + std::fabs(fv[worst]) + 1e-12)) {
      converged = true;
      break;
    }

    std::array<double, 3> centroid{0.0, 0.0, 0.0};
    for (int j = 0; j <= kDim; ++j) {
      if (j == worst) continue;
      for (int i = 0; i < kDim; ++i) centroid[i] += verts[j][i];
    }
    for (int i = 0; i < kDim; ++i) centroid[i] /= kDim;

    auto blend = [&](double coef) {
      std::array<double, 3> p;
      for (int i = 0; i < kDim; ++i) {
        p[i] = centroid[i] + coef * (centroid[i] - verts[worst][i]);
      }
      return project(p);
    };

    const auto reflected = blend(1.0);
    const double fr = f(reflected);
    ++evals;
    if (fr < fv[best]) {
      const auto expanded = blend(2.0);
      const double fe = f(expanded);
      ++evals;
      if (fe < fr) {
        verts[worst] = expanded;
        fv[worst] = fe;
      } else {
        verts[worst] = reflected;
        fv[worst] = fr;
      }
    } else if (fr < fv[second_worst]) {
      verts[worst] = reflected;
      fv[worst] = fr;
    } else {
      const auto contracted = blend(fr < fv[worst] ? 0.5 : -0.5);
      const double fc = f(contracted);
      ++evals;
      if (fc < std::min(fr, fv[worst])) {
        verts[worst] = contracted;
        fv[worst] = fc;
      } else {
        // Shrink toward the best vertex.
        for (int j = 0; j <= kDim; ++j) {
          if (j == best) continue;
          for (int i = 0; i < kDim; ++i) {
            verts[j][i] = verts[best][i] + 0.5 * (verts[j][i] - verts[best][i]);
          }
          verts[j] = project(verts[j]);
          fv[j] = f(verts[j]);
          ++evals;
        }
      }
    }
  }

  const int best = static_cast<int>(
      std::min_element(fv.begin(), fv.end()) - fv.begin());
  return {verts[static_cast<std::size_t>(best)], fv[static_cast<std::size_t>(best)],
          evals, converged};
}

double lambda1_of(double sigma_o, double sigma_i) {
  if (sigma_i == 0.0) return 0.0;
  const double so2 = sigma_o * sigma_o;
  const double si2 = sigma_i * sigma_i;
  return std::sqrt(so2 * si2 / (so2 + si2));
}

}  // namespace

double BimodalParams::lambda1() const { return lambda1_of(sigma_o, sigma_i); }

double BimodalParams::xi() const {
  return lambda0() / (lambda0() - k * lambda1());
}

BimodalParams BimodalParams::for_pds(int pds_percent) {
  // Columns: K, sigma_i^2, sigma_o^2.
  switch (pds_percent) {
    case 0:
      return {0.0, std::sqrt(0.5), 0.0};
    case 20:
      return {0.470, std::sqrt(0.4500), std::sqrt(0.0045)};
    case 40:
      return {0.660, std::sqrt(0.4310), std::sqrt(0.0090)};
    case 60:
      return {0.770, std::sqrt(0.4200), std::sqrt(0.0200)};
    case 80:
      return {0.830, std::sqrt(0.4160), std::sqrt(0.0280)};
    default:
      throw std::invalid_argument(
          "BimodalParams::for_pds: tabulated rows are 0, 20, 40, 60, 80");
  }
}

void BimodalParams::validate() const {
  if (!(k >= 0.0 && k < 1.0)) {
    throw std::invalid_argument("BimodalParams: K must be in [0, 1)");
  }
  if (!(sigma_o > 0.0)) {
    throw std::invalid_argument("BimodalParams: sigma_o must be positive");
  }
  if (!(sigma_i >= 0.0)) {
    throw std::invalid_argument("BimodalParams: sigma_i must be >= 0");
  }
  if (sigma_i == 0.0 && k > 0.0) {
    throw std::invalid_argument(
        "BimodalParams: zero trench width requires K = 0");
  }
  if (!(lambda0() - k * lambda1() > 0.0)) {
    throw std::invalid_argument("BimodalParams: lambda0 - K*lambda1 must be > 0");
  }
  // Density nonnegativity, checked on a grid as a construction-time guard.
  for (int i = 0; i <= 256; ++i) {
    const double x = 8.0 * lambda0() * static_cast<double>(i) / 256.0;
    if (pdf_marginal(x, *this) < -1e-15) {
      throw std::invalid_argument("BimodalParams: density is negative");
    }
  }
}

double pdf_marginal(double x, const BimodalParams& p) {
  const double l0 = p.lambda0();
  double trench = 0.0;
  double denom = kSqrt2Pi * l0;
  if (p.k > 0.0) {
    const double l1 = p.lambda1();
    const double d = 0.5 * (1.0 / (l1 * l1) - 1.0 / (l0 * l0));
    trench = p.k * std::exp(-d * x * x);
    denom = kSqrt2Pi * (l0 - p.k * l1);
  }
  return std::exp(-x * x / (2.0 * l0 * l0)) * (1.0 - trench) / denom;
}

double second_moment(const BimodalParams& p) {
  const double l0 = p.lambda0();
  const double l1 = p.lambda1();
  return 2.0 * (l0 * l0 * l0 - p.k * l1 * l1 * l1) / (l0 - p.k * l1);
}

std::complex<double> sample(const BimodalParams& p, RandomStream& rng) {
  const double l0 = p.lambda0();
  auto draw = [&]() {
    if (p.k == 0.0) return l0 * rng.normal();
    const double l1 = p.lambda1();
    const double d = 0.5 * (1.0 / (l1 * l1) - 1.0 / (l0 * l0));
    for (;;) {
      const double x = l0 * rng.normal();
      if (rng.uniform() <= 1.0 - p.k * std::exp(-d * x * x)) return x;
    }
  };
  const double re = draw();
  const double im = draw();
  return {re, im};
}

FitResult fit(std::span<const std::complex<double>> samples) {
  if (samples.size() < 100000) {
    throw std::invalid_argument("fit: need at least 1e5 samples");
  }

  // Pool real and imaginary parts (the two marginals are identical) and keep
  // the squares sorted so the trench term can skip samples it cannot touch.
  std::vector<double> xsq;
  xsq.reserve(2 * samples.size());
  for (const auto& s : samples) {
    xsq.push_back(s.real() * s.real());
    xsq.push_back(s.imag() * s.imag());
  }
  std::sort(xsq.begin(), xsq.end());
  const auto n = static_cast<double>(xsq.size());
  double sum_sq = 0.0;
  for (double v : xsq) sum_sq += v;

  const auto nll = [&](const std::array<double, 3>& theta) {
    const double k = theta[0], sigma_o = theta[1], sigma_i = theta[2];
    const double l0 = sigma_o;
    const double l1 = lambda1_of(sigma_o, sigma_i);
    double acc = sum_sq / (2.0 * l0 * l0) + n * std::log(kSqrt2Pi * (l0 - k * l1));
    if (k > 0.0) {
      const double d = 0.5 * (1.0 / (l1 * l1) - 1.0 / (l0 * l0));
      // exp(-d*x^2) is negligible past x^2 = 45/d; xsq is sorted.
      const auto last = std::upper_bound(xsq.begin(), xsq.end(), 45.0 / d);
      for (auto it = xsq.begin(); it != last; ++it) {
        acc -= std::log1p(-k * std::exp(-d * *it));
      }
    }
    return acc;
  };

  // Moment-matched start: scale from the sample second moment, trench depth
  // from the density near zero relative to a Gaussian of that variance.
  const double m2 = sum_sq / n;
  const double scale = std::sqrt(m2);
  const double window = 0.05 * scale;
  const auto in_window = std::upper_bound(xsq.begin(), xsq.end(), window * window) -
                         xsq.begin();
  const double f0 = static_cast<double>(in_window) / (n * 2.0 * window);
  const double ratio = f0 * kSqrt2Pi * scale;
  const double k0 = clamp_to(1.0 - ratio, 0.02, 0.95);

  RandomStream jitter(0xF17u);
  FitResult best;
  best.nll = std::numeric_limits<double>::infinity();
  int total_evals = 0;
  for (int restart = 0; restart < 6; ++restart) {
    std::array<double, 3> start{k0, scale, 0.15 * scale};
    if (restart > 0) {
      start[0] = clamp_to(k0 + 0.15 * jitter.normal(), 0.02, 0.97);
      start[1] = scale * std::exp(0.2 * jitter.normal());
      start[2] = 0.15 * scale * std::exp(0.5 * jitter.normal());
    }
    const auto r = nelder_mead(nll, start, kFitBox, 700, 1e-10);
    total_evals += r.evals;
    if (r.f < best.nll) {
      best.nll = r.f;
      best.params = BimodalParams{r.x[0], r.x[1], r.x[2]};
      best.converged = r.converged;
    }
  }
  best.sample_count = samples.size();
  best.iterations = total_evals;
  // A zero-width trench can only surface with K pinned at the box floor;
  // normalize to the exact Gaussian corner.
  if (best.params.k <= kFitBox.lo[0]) best.params.k = 0.0;
  if (best.params.k == 0.0 && best.params.sigma_i <= kFitBox.lo[2]) {
    best.params.sigma_i = 0.0;
  }
  return best;
}

std::string fit_report_json(const FitResult& r) {
  nlohmann::json j;
  j["params"] = {{"k", r.params.k},
                 {"sigma_o", r.params.sigma_o},
                 {"sigma_i", r.params.sigma_i},
                 {"sigma_o_sq", r.params.sigma_o * r.params.sigma_o},
                 {"sigma_i_sq", r.params.sigma_i * r.params.sigma_i}};
  j["nll"] = r.nll;
  j["sample_count"] = r.sample_count;
  j["converged"] = r.converged;
  j["iterations"] = r.iterations;
  return j.dump(2);
}

}  // namespace mediumband
