// SPDX-License-Identifier: Apache-2.0
//
// mediumband: link-level simulation and BER analysis for mediumband wireless channels

#include "mediumband/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "mediumband/version.hpp"

namespace mediumband {

namespace {

constexpr std::uint64_t kFadingStreamTag = 0x70646673747265ULL;

int resolve_workers(int workers) {
  if (workers > 0) return workers;
  const unsigned hc = std::thread::hardware_concurrency();
  return static_cast<int>(std::clamp(hc, 1u, 8u));
}

std::string scenario_summary(const LinkScenario& sc) {
  std::ostringstream os;
  os.precision(17);
  os << "name=" << sc.name << "; n_paths=" << sc.profile.n_paths
     << "; t_m=" << sc.profile.t_m << "; profile="
     << (sc.profile.kind == GainProfile::uniform ? "uniform" : "exponential")
     << "; kappa=" << sc.profile.kappa << "; beta=" << sc.pulse.beta
     << "; ts=" << sc.pulse.ts << "; frame_len=" << sc.frame.frame_len
     << "; detector="
     << (sc.detector == Detector::method1 ? "method1" : "method2")
     << "; sync_rule="
     << (sc.sync_rule == SyncRule::max_h ? "max_h" : "earliest_path")
     << "; seed=" << sc.seed << "; pds_percent=" << sc.pds();
  return os.str();
}

nlohmann::json scenario_json(const LinkScenario& sc) {
  return {{"name", sc.name},
          {"n_paths", sc.profile.n_paths},
          {"t_m", sc.profile.t_m},
          {"profile",
           sc.profile.kind == GainProfile::uniform ? "uniform" : "exponential"},
          {"kappa", sc.profile.kappa},
          {"beta", sc.pulse.beta},
          {"ts", sc.pulse.ts},
          {"frame_len", sc.frame.frame_len},
          {"oversample", sc.frame.oversample},
          {"guard", sc.frame.guard},
          {"detector", sc.detector == Detector::method1 ? "method1" : "method2"},
          {"sync_rule",
           sc.sync_rule == SyncRule::max_h ? "max_h" : "earliest_path"},
          {"seed", sc.seed},
          {"pds_percent", sc.pds()}};
}

nlohmann::json params_json(const BimodalParams& p) {
  return {{"k", p.k},
          {"sigma_o", p.sigma_o},
          {"sigma_i", p.sigma_i},
          {"sigma_o_sq", p.sigma_o * p.sigma_o},
          {"sigma_i_sq", p.sigma_i * p.sigma_i}};
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw io_error("cannot open for writing: " + path);
  os << content;
  os.flush();
  if (!os) throw io_error("write failed: " + path);
}

std::string sidecar_path(const std::string& out) {
  if (out.size() >= 4 && out.substr(out.size() - 4) == ".csv") {
    return out.substr(0, out.size() - 4) + ".json";
  }
  return out + ".json";
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

std::optional<BimodalParams> table1_reference(double pds) {
  for (int row : {0, 20, 40, 60, 80}) {
    if (std::fabs(pds - row) < 1e-9) return BimodalParams::for_pds(row);
  }
  return std::nullopt;
}

}  // namespace

std::vector<double> make_snr_grid_db(const SweepOptions& sweep) {
  if (!(sweep.snr_step_db > 0.0)) {
    throw std::invalid_argument("sweep: SNR step must be positive");
  }
  std::vector<double> grid;
  // Half-step slack keeps the stop value on the grid despite rounding.
  for (double db = sweep.snr_start_db;
       db <= sweep.snr_stop_db + 1e-9 * std::fabs(sweep.snr_step_db) +
                 1e-12;
       db += sweep.snr_step_db) {
    grid.push_back(db);
  }
  return grid;
}

FadingPopulation simulate_fading(const LinkScenario& scenario,
                                 std::size_t count, int workers) {
  scenario.validate();
  FadingPopulation pop;
  pop.h.resize(count);
  pop.g.resize(count);
  pop.eta.resize(count);

  const int nw = std::max(1, std::min<int>(resolve_workers(workers),
                                           static_cast<int>(count / 1024) + 1));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(nw));
  for (int w = 0; w < nw; ++w) {
    pool.emplace_back([&, w] {
      const std::size_t chunk = (count + static_cast<std::size_t>(nw) - 1) /
                                static_cast<std::size_t>(nw);
      const std::size_t from = static_cast<std::size_t>(w) * chunk;
      const std::size_t to = std::min(count, from + chunk);
      for (std::size_t i = from; i < to; ++i) {
        auto rng = RandomStream::substream(scenario.seed, kFadingStreamTag, i);
        const auto ch = sample_realization(scenario.profile, rng);
        const double tau_hat =
            synchronize(ch, scenario.pulse, scenario.sync_rule);
        pop.h[i] = fading_h(ch, tau_hat, scenario.pulse);
        pop.g[i] = narrowband_g(ch);
        pop.eta[i] = fading_eta(ch, tau_hat, scenario.pulse);
      }
    });
  }
  for (auto& th : pool) th.join();
  return pop;
}

CommandStatus cmd_ber(const LinkScenario& scenario, const BerCommand& cmd) {
  scenario.validate();
  if (!cmd.method1 && !cmd.method2) {
    throw std::invalid_argument("cmd_ber: at least one detector required");
  }
  const auto grid = make_snr_grid_db(cmd.sweep);

  CommandStatus status;
  BimodalParams bound_params;
  nlohmann::json fit_meta;
  std::vector<BerPoint> pts1, pts2;

  if (!grid.empty()) {
    if (cmd.bound_params) {
      bound_params = *cmd.bound_params;
      bound_params.validate();
      fit_meta = {{"source", "supplied"}, {"params", params_json(bound_params)}};
    } else {
      const auto pop = simulate_fading(scenario, cmd.fit_samples, cmd.workers);
      const auto fitted = fit(pop.h);
      status.fit_converged = fitted.converged;
      bound_params = fitted.params;
      fit_meta = {{"source", "fitted"},
                  {"params", params_json(bound_params)},
                  {"nll", fitted.nll},
                  {"sample_count", fitted.sample_count},
                  {"converged", fitted.converged}};
    }

    if (cmd.method1 && cmd.method2) {
      auto paired = run_ber_paired(scenario, grid, cmd.stop, cmd.workers);
      pts1 = std::move(paired.first);
      pts2 = std::move(paired.second);
    } else {
      LinkScenario single = scenario;
      single.detector = cmd.method1 ? Detector::method1 : Detector::method2;
      auto pts = run_ber(single, grid, cmd.stop, cmd.workers);
      (cmd.method1 ? pts1 : pts2) = std::move(pts);
    }
  }

  const auto series = grid.empty()
                          ? SeriesCoefficients{}
                          : series_coefficients(bound_params);

  // CSV body.
  std::ostringstream csv;
  csv << "# mediumband " << kVersion << " ber\n";
  csv << "# scenario: " << scenario_summary(scenario) << "\n";
  csv << "# stop: min_errors=" << cmd.stop.min_errors
      << "; max_bits=" << cmd.stop.max_bits << "\n";
  csv << "snr_db";
  if (cmd.method1) csv << ",ber_method1,errors_method1,bits_method1,ci_method1";
  if (cmd.method2) csv << ",ber_method2,errors_method2,bits_method2,ci_method2";
  csv << ",lower_bound,rayleigh,series3\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double gamma = std::pow(10.0, grid[i] / 10.0);
    csv << format_double(grid[i]);
    if (cmd.method1) {
      const auto& p = pts1[i];
      csv << ',' << format_double(p.ber) << ',' << p.bit_errors << ','
          << p.bits << ',' << format_double(p.ci_halfwidth);
    }
    if (cmd.method2) {
      const auto& p = pts2[i];
      csv << ',' << format_double(p.ber) << ',' << p.bit_errors << ','
          << p.bits << ',' << format_double(p.ci_halfwidth);
    }
    csv << ',' << format_double(lower_bound(gamma, bound_params)) << ','
        << format_double(rayleigh_ber(gamma)) << ','
        << format_double(series_eval(gamma, series)) << '\n';
  }

  // JSON sidecar / primary document.
  nlohmann::json doc;
  doc["artifact"] = {{"name", "mediumband"}, {"version", kVersion}};
  doc["command"] = "ber";
  doc["scenario"] = scenario_json(scenario);
  doc["stop"] = {{"min_errors", cmd.stop.min_errors},
                 {"max_bits", cmd.stop.max_bits}};
  if (!grid.empty()) {
    doc["bound_params"] = fit_meta;
    if (cmd.method1) {
      doc["method1"] = nlohmann::json::parse(ber_points_json(pts1));
    }
    if (cmd.method2) {
      doc["method2"] = nlohmann::json::parse(ber_points_json(pts2));
    }
    nlohmann::json analytics = nlohmann::json::array();
    for (double db : grid) {
      const double gamma = std::pow(10.0, db / 10.0);
      analytics.push_back({{"snr_db", db},
                           {"lower_bound", lower_bound(gamma, bound_params)},
                           {"rayleigh", rayleigh_ber(gamma)},
                           {"series3", series_eval(gamma, series)}});
    }
    doc["analytics"] = analytics;
  }

  if (cmd.format == OutputFormat::csv) {
    write_file(cmd.out, csv.str());
    write_file(sidecar_path(cmd.out), doc.dump(2) + "\n");
  } else {
    write_file(cmd.out, doc.dump(2) + "\n");
  }
  return status;
}

CommandStatus cmd_pdf(const LinkScenario& scenario, const PdfCommand& cmd,
                      FitResult* fit_out) {
  scenario.validate();
  if (cmd.samples < 100000) {
    throw std::invalid_argument("cmd_pdf: need at least 1e5 samples");
  }
  if (cmd.bins < 8) {
    throw std::invalid_argument("cmd_pdf: need at least 8 bins");
  }

  const auto pop = simulate_fading(scenario, cmd.samples, cmd.workers);
  const auto fitted = fit(pop.h);
  if (fit_out != nullptr) *fit_out = fitted;

  // Pooled real/imaginary components; symmetric histogram range from the
  // observed power so the tails are covered deterministically.
  double power = 0.0;
  for (const auto& v : pop.h) power += std::norm(v);
  const double comp_sigma = std::sqrt(power / (2.0 * static_cast<double>(cmd.samples)));
  const double lim = 4.0 * comp_sigma;
  const int bins = cmd.bins;
  const double width = 2.0 * lim / bins;

  std::vector<double> dens_h(static_cast<std::size_t>(bins), 0.0);
  std::vector<double> dens_g(static_cast<std::size_t>(bins), 0.0);
  const auto deposit = [&](std::vector<double>& dens, double x) {
    const int b = static_cast<int>(std::floor((x + lim) / width));
    if (b >= 0 && b < bins) dens[static_cast<std::size_t>(b)] += 1.0;
  };
  for (const auto& v : pop.h) {
    deposit(dens_h, v.real());
    deposit(dens_h, v.imag());
  }
  for (const auto& v : pop.g) {
    deposit(dens_g, v.real());
    deposit(dens_g, v.imag());
  }
  const double norm = 1.0 / (2.0 * static_cast<double>(cmd.samples) * width);
  for (auto& d : dens_h) d *= norm;
  for (auto& d : dens_g) d *= norm;

  // Unit-power narrowband reference: Gaussian with variance 1/2 per component.
  const BimodalParams gaussian_ref{0.0, std::sqrt(0.5), 0.0};

  std::ostringstream csv;
  csv << "# mediumband " << kVersion << " pdf\n";
  csv << "# scenario: " << scenario_summary(scenario) << "\n";
  csv << "# samples: " << cmd.samples << "\n";
  csv << "bin_lo,bin_hi,bin_center,density_h,density_g,pdf_fitted,pdf_gaussian\n";
  for (int b = 0; b < bins; ++b) {
    const double lo = -lim + b * width;
    const double center = lo + 0.5 * width;
    csv << format_double(lo) << ',' << format_double(lo + width) << ','
        << format_double(center) << ','
        << format_double(dens_h[static_cast<std::size_t>(b)]) << ','
        << format_double(dens_g[static_cast<std::size_t>(b)]) << ','
        << format_double(pdf_marginal(center, fitted.params)) << ','
        << format_double(pdf_marginal(center, gaussian_ref)) << '\n';
  }

  nlohmann::json doc;
  doc["artifact"] = {{"name", "mediumband"}, {"version", kVersion}};
  doc["command"] = "pdf";
  doc["scenario"] = scenario_json(scenario);
  doc["samples"] = cmd.samples;
  doc["fit"] = nlohmann::json::parse(fit_report_json(fitted));
  if (const auto ref = table1_reference(scenario.pds())) {
    doc["table1_reference"] = params_json(*ref);
  }
  if (cmd.format == OutputFormat::json) {
    nlohmann::json hist;
    hist["bin_width"] = width;
    hist["range"] = {-lim, lim};
    hist["density_h"] = dens_h;
    hist["density_g"] = dens_g;
    doc["histogram"] = hist;
    write_file(cmd.out, doc.dump(2) + "\n");
  } else {
    write_file(cmd.out, csv.str());
    write_file(sidecar_path(cmd.out), doc.dump(2) + "\n");
  }

  CommandStatus status;
  status.fit_converged = fitted.converged;
  return status;
}

void cmd_bound(const BoundCommand& cmd) {
  cmd.params.validate();
  cmd.modulation.validate();
  const auto grid = make_snr_grid_db(cmd.sweep);
  const auto series = series_coefficients(cmd.params, cmd.modulation);

  std::ostringstream csv;
  csv << "# mediumband " << kVersion << " bound\n";
  csv << "# params: k=" << format_double(cmd.params.k)
      << "; sigma_o_sq=" << format_double(cmd.params.sigma_o * cmd.params.sigma_o)
      << "; sigma_i_sq=" << format_double(cmd.params.sigma_i * cmd.params.sigma_i)
      << "; rho1=" << format_double(cmd.modulation.rho1)
      << "; rho2=" << format_double(cmd.modulation.rho2) << "\n";
  csv << "snr_db,lower_bound,asymptote,series3,rayleigh\n";

  nlohmann::json rows = nlohmann::json::array();
  for (double db : grid) {
    const double gamma = std::pow(10.0, db / 10.0);
    const double lb = lower_bound(gamma, cmd.params, cmd.modulation);
    const double as = asymptote(gamma, cmd.params, cmd.modulation);
    const double se = series_eval(gamma, series);
    const double ray = rayleigh_ber(gamma);
    csv << format_double(db) << ',' << format_double(lb) << ','
        << format_double(as) << ',' << format_double(se) << ','
        << format_double(ray) << '\n';
    rows.push_back({{"snr_db", db},
                    {"lower_bound", lb},
                    {"asymptote", as},
                    {"series3", se},
                    {"rayleigh", ray}});
  }

  nlohmann::json doc;
  doc["artifact"] = {{"name", "mediumband"}, {"version", kVersion}};
  doc["command"] = "bound";
  doc["params"] = params_json(cmd.params);
  doc["modulation"] = {{"rho1", cmd.modulation.rho1},
                       {"rho2", cmd.modulation.rho2}};
  doc["points"] = rows;

  if (cmd.format == OutputFormat::csv) {
    write_file(cmd.out, csv.str());
    write_file(sidecar_path(cmd.out), doc.dump(2) + "\n");
  } else {
    write_file(cmd.out, doc.dump(2) + "\n");
  }
}

std::vector<double> log_log_slopes(std::span<const double> gamma,
                                   std::span<const double> p) {
  if (gamma.size() != p.size()) {
    throw std::invalid_argument("log_log_slopes: size mismatch");
  }
  const std::size_t n = gamma.size();
  std::vector<double> slopes(n, 0.0);
  if (n < 2) return slopes;
  const auto slope_between = [&](std::size_t i, std::size_t j) {
    return (std::log10(p[j]) - std::log10(p[i])) /
           (std::log10(gamma[j]) - std::log10(gamma[i]));
  };
  slopes[0] = slope_between(0, 1);
  slopes[n - 1] = slope_between(n - 2, n - 1);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    slopes[i] = slope_between(i - 1, i + 1);
  }
  return slopes;
}

}  // namespace mediumband
