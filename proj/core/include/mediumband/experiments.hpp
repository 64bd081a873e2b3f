// SPDX-License-Identifier: Apache-2.0
//
// mediumband: link-level simulation and BER analysis for mediumband wireless channels

#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mediumband/ber_analytics.hpp"
#include "mediumband/fading_stats.hpp"
#include "mediumband/link_sim.hpp"
#include "mediumband/scenario.hpp"

namespace mediumband {

/// Raised when an output path cannot be opened or written.
struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class OutputFormat { csv, json };

/// Inclusive dB sweep start..stop in steps of step; an empty grid (start >
/// stop) is legal and produces header-only output.
struct SweepOptions {
  double snr_start_db = 0.0;
  double snr_stop_db = 25.0;
  double snr_step_db = 5.0;
};

std::vector<double> make_snr_grid_db(const SweepOptions& sweep);

/// h_o, g_o and eta_o populations over independent realizations of a
/// scenario. Realizations are sub-seeded by index, so the population is
/// reproducible for any worker count.
struct FadingPopulation {
  std::vector<std::complex<double>> h;
  std::vector<std::complex<double>> g;
  std::vector<double> eta;
};

FadingPopulation simulate_fading(const LinkScenario& scenario,
                                 std::size_t count, int workers = 0);

struct CommandStatus {
  bool fit_converged = true;
};

/// Plot-data bundle for the BER figures: simulated Method-1/Method-2 curves,
/// the Corollary-1 lower bound at fitted (or supplied) density parameters,
/// the Rayleigh baseline and the 3-term series.
struct BerCommand {
  SweepOptions sweep;
  bool method1 = true;
  bool method2 = true;
  StopRule stop;
  std::size_t fit_samples = 200000;  ///< population for on-the-fly bound params
  std::optional<BimodalParams> bound_params;  ///< overrides the fitted ones
  OutputFormat format = OutputFormat::csv;
  std::string out;
  int workers = 0;
};

CommandStatus cmd_ber(const LinkScenario& scenario, const BerCommand& cmd);

/// Fading-density study: histogram export of h_o and g_o plus the fitted
/// bimodal parameters and the tabulated reference row when the scenario's
/// PDS matches one.
struct PdfCommand {
  std::size_t samples = 1000000;
  int bins = 121;
  OutputFormat format = OutputFormat::csv;
  std::string out;
  int workers = 0;
};

CommandStatus cmd_pdf(const LinkScenario& scenario, const PdfCommand& cmd,
                      FitResult* fit_out = nullptr);

/// Analytic curves only: lower bound, asymptote, 3-term series and Rayleigh
/// baseline over an SNR grid.
struct BoundCommand {
  SweepOptions sweep;
  BimodalParams params;
  ModulationParams modulation = ModulationParams::bpsk();
  OutputFormat format = OutputFormat::csv;
  std::string out;
};

void cmd_bound(const BoundCommand& cmd);

/// Central-difference slopes of log10(p) versus log10(gamma); endpoints use
/// one-sided differences. Operationalizes the diversity-order readings.
std::vector<double> log_log_slopes(std::span<const double> gamma,
                                   std::span<const double> p);

}  // namespace mediumband
