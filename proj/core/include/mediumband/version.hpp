// SPDX-License-Identifier: Apache-2.0
//
// mediumband: link-level simulation and BER analysis for mediumband wireless channels

#pragma once

namespace mediumband {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace mediumband
