// SPDX-License-Identifier: Apache-2.0
//
// mediumband: link-level simulation and BER analysis for mediumband wireless channels

#include "mediumband/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace mediumband {

namespace {

LinkScenario base_scenario(std::string name, GainProfile kind, double kappa,
                           double t_m) {
  LinkScenario sc;
  sc.name = std::move(name);
  sc.profile.n_paths = 10;
  sc.profile.kind = kind;
  sc.profile.kappa = kappa;
  sc.profile.t_m = t_m;
  sc.pulse.beta = 0.22;
  sc.pulse.ts = 1.0;
  return sc;
}

std::string trim(const std::string& s) {
  const auto from = s.find_first_not_of(" \t\r\n");
  if (from == std::string::npos) return "";
  const auto to = s.find_last_not_of(" \t\r\n");
  return s.substr(from, to - from + 1);
}

}  // namespace

void LinkScenario::validate() const {
  profile.validate();
  pulse.validate();
  frame.validate();
}

LinkScenario preset(const std::string& name) {
  // Normalize "table1_pds(40)" to "table1_pds40".
  std::string key;
  for (char c : name) {
    if (c == '(' || c == ')') continue;
    key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }

  if (key == "narrowband") {
    return base_scenario("narrowband", GainProfile::uniform, 0.0, 0.0);
  }
  if (key == "scenario1") {
    return base_scenario("scenario1", GainProfile::exponential, 0.25, 0.2);
  }
  if (key == "scenario2") {
    return base_scenario("scenario2", GainProfile::uniform, 0.0, 0.6);
  }
  if (key.rfind("table1_pds", 0) == 0) {
    const std::string digits = key.substr(10);
    if (digits == "20" || digits == "40" || digits == "60" || digits == "80") {
      return base_scenario("table1_pds" + digits, GainProfile::uniform, 0.0,
                           std::stod(digits) / 100.0);
    }
  }
  throw std::invalid_argument("preset: unknown scenario '" + name + "'");
}

std::vector<std::string> preset_names() {
  return {"narrowband", "scenario1",    "scenario2",    "table1_pds20",
          "table1_pds40", "table1_pds60", "table1_pds80"};
}

std::string to_text(const LinkScenario& sc) {
  std::ostringstream os;
  os.precision(17);
  os << "# mediumband scenario\n";
  os << "name = " << sc.name << "\n";
  os << "n_paths = " << sc.profile.n_paths << "\n";
  os << "t_m = " << sc.profile.t_m << "\n";
  os << "profile = "
     << (sc.profile.kind == GainProfile::uniform ? "uniform" : "exponential")
     << "\n";
  os << "kappa = " << sc.profile.kappa << "\n";
  os << "beta = " << sc.pulse.beta << "\n";
  os << "ts = " << sc.pulse.ts << "\n";
  os << "frame_len = " << sc.frame.frame_len << "\n";
  os << "oversample = " << sc.frame.oversample << "\n";
  os << "guard = " << sc.frame.guard << "\n";
  os << "detector = "
     << (sc.detector == Detector::method1 ? "method1" : "method2") << "\n";
  os << "sync_rule = "
     << (sc.sync_rule == SyncRule::max_h ? "max_h" : "earliest_path") << "\n";
  os << "seed = " << sc.seed << "\n";
  return os.str();
}

LinkScenario scenario_from_text(const std::string& text) {
  LinkScenario sc;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("scenario: expected 'key = value': " + line);
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "name") {
        sc.name = value;
      } else if (key == "n_paths") {
        sc.profile.n_paths = std::stoi(value);
      } else if (key == "t_m") {
        sc.profile.t_m = std::stod(value);
      } else if (key == "profile") {
        if (value == "uniform") {
          sc.profile.kind = GainProfile::uniform;
        } else if (value == "exponential") {
          sc.profile.kind = GainProfile::exponential;
        } else {
          throw std::invalid_argument("scenario: unknown profile " + value);
        }
      } else if (key == "kappa") {
        sc.profile.kappa = std::stod(value);
      } else if (key == "beta") {
        sc.pulse.beta = std::stod(value);
      } else if (key == "ts") {
        sc.pulse.ts = std::stod(value);
      } else if (key == "frame_len") {
        sc.frame.frame_len = std::stoi(value);
      } else if (key == "oversample") {
        sc.frame.oversample = std::stoi(value);
      } else if (key == "guard") {
        sc.frame.guard = std::stoi(value);
      } else if (key == "detector") {
        if (value == "method1") {
          sc.detector = Detector::method1;
        } else if (value == "method2") {
          sc.detector = Detector::method2;
        } else {
          throw std::invalid_argument("scenario: unknown detector " + value);
        }
      } else if (key == "sync_rule") {
        if (value == "max_h") {
          sc.sync_rule = SyncRule::max_h;
        } else if (value == "earliest_path") {
          sc.sync_rule = SyncRule::earliest_path;
        } else {
          throw std::invalid_argument("scenario: unknown sync rule " + value);
        }
      } else if (key == "seed") {
        sc.seed = std::stoull(value);
      } else {
        throw std::invalid_argument("scenario: unknown key '" + key + "'");
      }
    } catch (const std::invalid_argument&) {
      throw;
    } catch (const std::exception&) {
      throw std::invalid_argument("scenario: bad value for '" + key + "': " +
                                  value);
    }
  }
  sc.validate();
  return sc;
}

}  // namespace mediumband
