// SPDX-License-Identifier: Apache-2.0
//
// mediumband: link-level simulation and BER analysis for mediumband wireless channels

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mediumband/channel.hpp"
#include "mediumband/link_sim.hpp"
#include "mediumband/pulse_math.hpp"

namespace mediumband {

/// Full description of one link experiment.
struct LinkScenario {
  std::string name = "custom";
  MultipathProfile profile;
  PulseSpec pulse;
  FrameConfig frame;
  Detector detector = Detector::method1;
  SyncRule sync_rule = SyncRule::max_h;
  std::uint64_t seed = 1;

  /// Percentage delay spread of the profile.
  double pds() const { return pds_percent(profile.t_m * pulse.ts, pulse.ts); }

  void validate() const;
};

/// Named presets: "narrowband", "scenario1" (exponential kappa = 0.25,
/// PDS 20%), "scenario2" (uniform, PDS 60%), and "table1_pds<p>" for
/// p in {20, 40, 60, 80} (the "table1_pds(p)" spelling is accepted too).
/// Throws std::invalid_argument for unknown names.
LinkScenario preset(const std::string& name);

std::vector<std::string> preset_names();

/// Flat key-value text form; '#' starts a comment. Round-trips through
/// scenario_from_text.
std::string to_text(const LinkScenario& sc);

/// Parses the key-value form; unspecified keys keep their defaults and
/// unknown keys raise std::invalid_argument.
LinkScenario scenario_from_text(const std::string& text);

}  // namespace mediumband
