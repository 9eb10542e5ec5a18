#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "dirsim/sweep.hpp"

namespace dirsim {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Baseline deployment: 2x2 BS, two 10x10 panels at (-5, -/+20, 5), user at
/// (0, 25, 1), 5 dBm transmit power, -104 dBm noise, 10 dB Rician factor on
/// every link, path losses derived from the node distances.
ScenarioConfig default_scenario();

struct LoadedConfig {
  ScenarioConfig scenario;
  std::optional<SweepSpec> sweep;
};

/// Parses a JSON scenario file. Unspecified fields take the baseline
/// defaults; unknown keys and out-of-range values are rejected with the
/// offending field named. All dB/dBm quantities carry an explicit suffix in
/// their key; internal units are watts, linear power, radians, and meters.
LoadedConfig load_config_file(const std::string& path);

/// Same, from a JSON string.
LoadedConfig parse_config(const std::string& json_text);

/// Phase vectors as a JSON document {"phi1": [...], "phi2": [...]}.
std::string phases_to_json(const PhaseShifts& ph);
PhaseShifts phases_from_json(const std::string& json_text);

}  // namespace dirsim
