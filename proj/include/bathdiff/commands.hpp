#pragma once

#include "bathdiff/corr4.hpp"

#include <array>
#include <string>
#include <vector>

namespace bathdiff {

struct CommandOptions {
    std::string config_path;
    std::string out_dir = ".";
    int threads = 0; // 0 = hardware concurrency
    bool no_plot = false;
};

/// Run the paired dynamics scenario from [scenario]; writes dynamics.csv,
/// manifest.json and (unless suppressed) dynamics.svg. Throws on failure.
void cmd_dynamics(const CommandOptions& opts);

/// Run the delta_max sweep from [sweep]; writes heatmap.csv, manifest.json
/// and (unless suppressed) heatmap.svg. Throws on failure.
void cmd_heatmap(const CommandOptions& opts);

/// Print closed-form vs brute-force correlator values for one query.
void cmd_corr4(const std::string& statistics, const std::array<int, 4>& modes,
               const std::vector<double>& f);

/// Built-in invariant suite; prints a pass/fail table. Returns overall pass.
bool cmd_validate();

} // namespace bathdiff
