// SPDX-License-Identifier: Apache-2.0
//
// mediumband: link-level simulation and BER analysis for mediumband wireless channels
//
// mbsim: command-line front end. Subcommands: ber, pdf, bound, preset.
// Exit codes: 0 success, 2 validation error, 3 I/O error, 4 fit did not
// converge.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "mediumband/experiments.hpp"
#include "mediumband/version.hpp"

namespace {

using namespace mediumband;

constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;
constexpr int kExitFit = 4;

std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw io_error("cannot open for reading: " + path);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

OutputFormat parse_format(const std::string& name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  throw std::invalid_argument("format must be csv or json");
}

// Accepts either a bare parameter object or a fit report with a "params" key;
// sigma values may be given directly or as squares.
BimodalParams params_from_json_text(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  if (j.contains("params")) j = j["params"];
  BimodalParams p;
  p.k = j.at("k").get<double>();
  if (j.contains("sigma_o")) {
    p.sigma_o = j.at("sigma_o").get<double>();
  } else {
    p.sigma_o = std::sqrt(j.at("sigma_o_sq").get<double>());
  }
  if (j.contains("sigma_i")) {
    p.sigma_i = j.at("sigma_i").get<double>();
  } else if (j.contains("sigma_i_sq")) {
    p.sigma_i = std::sqrt(j.at("sigma_i_sq").get<double>());
  } else {
    p.sigma_i = 0.0;
  }
  return p;
}

struct ScenarioFlags {
  std::string preset_name;
  std::string scenario_file;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> sync_rule;
  std::optional<std::string> detector;

  void add_to(CLI::App& cmd) {
    cmd.add_option("--preset", preset_name,
                   "Scenario preset name (see 'mbsim preset list')");
    cmd.add_option("--scenario", scenario_file,
                   "Scenario file (flat key-value form)");
    auto* seed_opt = cmd.add_option_function<std::uint64_t>(
        "--seed", [this](std::uint64_t v) { seed = v; },
        "Master seed override");
    (void)seed_opt;
    cmd.add_option_function<std::string>(
        "--sync-rule", [this](const std::string& v) { sync_rule = v; },
        "Synchronization rule: max_h | earliest_path");
    cmd.add_option_function<std::string>(
        "--detector", [this](const std::string& v) { detector = v; },
        "Detector: method1 | method2 | both");
  }

  LinkScenario resolve() const {
    LinkScenario sc;
    if (!scenario_file.empty()) {
      sc = scenario_from_text(read_file(scenario_file));
    } else if (!preset_name.empty()) {
      sc = preset(preset_name);
    } else {
      throw std::invalid_argument("specify --preset or --scenario");
    }
    if (seed) sc.seed = *seed;
    if (sync_rule) {
      if (*sync_rule == "max_h") {
        sc.sync_rule = SyncRule::max_h;
      } else if (*sync_rule == "earliest_path") {
        sc.sync_rule = SyncRule::earliest_path;
      } else {
        throw std::invalid_argument("unknown sync rule: " + *sync_rule);
      }
    }
    if (detector && *detector != "both") {
      if (*detector == "method1") {
        sc.detector = Detector::method1;
      } else if (*detector == "method2") {
        sc.detector = Detector::method2;
      } else {
        throw std::invalid_argument("unknown detector: " + *detector);
      }
    }
    return sc;
  }
};

int run(int argc, char** argv) {
  CLI::App app{"mediumband link-level simulator and BER analytics"};
  app.set_version_flag("--version", std::string("mbsim ") + kVersion);
  app.require_subcommand(1);

  // --- preset ---------------------------------------------------------
  auto* cmd_preset = app.add_subcommand("preset", "List or export presets");
  std::string preset_arg;
  std::string preset_out;
  cmd_preset->add_option("name", preset_arg,
                         "'list' or a preset name to export");
  cmd_preset->add_option("--out", preset_out,
                         "Write the scenario file here instead of stdout");

  // --- ber ------------------------------------------------------------
  auto* cmd_ber_app = app.add_subcommand(
      "ber", "Monte Carlo BER sweep with bound/baseline columns");
  ScenarioFlags ber_flags;
  ber_flags.add_to(*cmd_ber_app);
  BerCommand ber_cmd;
  std::string ber_format = "csv";
  std::string ber_params_json;
  cmd_ber_app->add_option("--snr-start-db", ber_cmd.sweep.snr_start_db,
                          "Sweep start (dB)");
  cmd_ber_app->add_option("--snr-stop-db", ber_cmd.sweep.snr_stop_db,
                          "Sweep stop (dB), inclusive");
  cmd_ber_app->add_option("--snr-step-db", ber_cmd.sweep.snr_step_db,
                          "Sweep step (dB)");
  cmd_ber_app->add_option("--min-errors", ber_cmd.stop.min_errors,
                          "Bit errors collected per point");
  cmd_ber_app->add_option("--max-bits", ber_cmd.stop.max_bits,
                          "Bit budget per point");
  cmd_ber_app->add_option("--fit-samples", ber_cmd.fit_samples,
                          "h_o population size for the on-the-fly bound fit");
  cmd_ber_app->add_option("--params-json", ber_params_json,
                          "Use these density parameters for the bound instead "
                          "of fitting");
  cmd_ber_app->add_option("--workers", ber_cmd.workers,
                          "Worker threads (0 = auto)");
  cmd_ber_app->add_option("--format", ber_format, "csv | json");
  cmd_ber_app->add_option("--out", ber_cmd.out, "Output path")->required();

  // --- pdf ------------------------------------------------------------
  auto* cmd_pdf_app = app.add_subcommand(
      "pdf", "Fading-factor density histogram and bimodal fit");
  ScenarioFlags pdf_flags;
  pdf_flags.add_to(*cmd_pdf_app);
  PdfCommand pdf_cmd;
  std::string pdf_format = "csv";
  cmd_pdf_app->add_option("--samples", pdf_cmd.samples,
                          "Number of channel realizations (>= 1e5)");
  cmd_pdf_app->add_option("--bins", pdf_cmd.bins, "Histogram bins");
  cmd_pdf_app->add_option("--workers", pdf_cmd.workers,
                          "Worker threads (0 = auto)");
  cmd_pdf_app->add_option("--format", pdf_format, "csv | json");
  cmd_pdf_app->add_option("--out", pdf_cmd.out, "Output path")->required();

  // --- bound ----------------------------------------------------------
  auto* cmd_bound_app = app.add_subcommand(
      "bound", "Analytic BER curves for a parameter set");
  BoundCommand bound_cmd;
  std::string bound_format = "csv";
  std::string bound_params_json;
  int bound_pds = -1;
  cmd_bound_app->add_option("--pds", bound_pds,
                            "Tabulated parameter row: 0, 20, 40, 60 or 80");
  cmd_bound_app->add_option("--params-json", bound_params_json,
                            "Density parameters from a JSON file (e.g. a pdf "
                            "command fit report)");
  cmd_bound_app->add_option("--rho1", bound_cmd.modulation.rho1,
                            "Modulation constant rho1");
  cmd_bound_app->add_option("--rho2", bound_cmd.modulation.rho2,
                            "Modulation constant rho2");
  cmd_bound_app->add_option("--snr-start-db", bound_cmd.sweep.snr_start_db,
                            "Sweep start (dB)");
  cmd_bound_app->add_option("--snr-stop-db", bound_cmd.sweep.snr_stop_db,
                            "Sweep stop (dB), inclusive");
  cmd_bound_app->add_option("--snr-step-db", bound_cmd.sweep.snr_step_db,
                            "Sweep step (dB)");
  cmd_bound_app->add_option("--format", bound_format, "csv | json");
  cmd_bound_app->add_option("--out", bound_cmd.out, "Output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (cmd_preset->parsed()) {
      if (preset_arg.empty() || preset_arg == "list") {
        for (const auto& name : preset_names()) std::cout << name << "\n";
        return 0;
      }
      const auto sc = preset(preset_arg);
      const auto text = to_text(sc);
      if (preset_out.empty()) {
        std::cout << text;
      } else {
        std::ofstream os(preset_out, std::ios::binary);
        if (!os) throw io_error("cannot open for writing: " + preset_out);
        os << text;
        if (!os) throw io_error("write failed: " + preset_out);
      }
      return 0;
    }

    if (cmd_ber_app->parsed()) {
      const auto sc = ber_flags.resolve();
      ber_cmd.format = parse_format(ber_format);
      if (ber_flags.detector) {
        ber_cmd.method1 = *ber_flags.detector != "method2";
        ber_cmd.method2 = *ber_flags.detector != "method1";
      }
      if (!ber_params_json.empty()) {
        ber_cmd.bound_params = params_from_json_text(read_file(ber_params_json));
      }
      const auto status = cmd_ber(sc, ber_cmd);
      if (!status.fit_converged) {
        std::cerr << "mbsim: bound parameter fit did not converge\n";
        return kExitFit;
      }
      return 0;
    }

    if (cmd_pdf_app->parsed()) {
      const auto sc = pdf_flags.resolve();
      pdf_cmd.format = parse_format(pdf_format);
      const auto status = cmd_pdf(sc, pdf_cmd);
      if (!status.fit_converged) {
        std::cerr << "mbsim: fit did not converge (outputs were written)\n";
        return kExitFit;
      }
      return 0;
    }

    if (cmd_bound_app->parsed()) {
      bound_cmd.format = parse_format(bound_format);
      if (!bound_params_json.empty()) {
        bound_cmd.params = params_from_json_text(read_file(bound_params_json));
      } else if (bound_pds >= 0) {
        bound_cmd.params = BimodalParams::for_pds(bound_pds);
      } else {
        throw std::invalid_argument("bound: specify --pds or --params-json");
      }
      cmd_bound(bound_cmd);
      return 0;
    }
  } catch (const io_error& e) {
    std::cerr << "mbsim: " << e.what() << "\n";
    return kExitIo;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "mbsim: bad JSON input: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "mbsim: " << e.what() << "\n";
    return kExitValidation;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
