#pragma once

#include "bathdiff/experiments.hpp"

#include <map>
#include <optional>
#include <string>

namespace bathdiff {

/// Parsed scenario/sweep configuration plus the raw key-value snapshot kept
/// for the run manifest. Configs are flat `key = value` lines under
/// [scenario] or [sweep] sections; `#` starts a comment; unknown sections or
/// keys are errors.
struct ParsedConfig {
    std::optional<ScenarioConfig> scenario;
    std::optional<SweepConfig> sweep;
    std::map<std::string, std::map<std::string, std::string>> raw;
};

[[nodiscard]] ParsedConfig parse_config_text(const std::string& text);
[[nodiscard]] ParsedConfig parse_config_file(const std::string& path);

} // namespace bathdiff
