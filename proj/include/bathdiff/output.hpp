#pragma once

#include "bathdiff/experiments.hpp"

#include <string>
#include <vector>

namespace bathdiff {

/// Float-to-text with 17 significant digits (value round-trips exactly).
[[nodiscard]] std::string format_double(double v);

/// dynamics.csv: header `t,n_fermion,n_spin[,n_me2]`, one row per sample.
[[nodiscard]] std::string dynamics_csv(const ScenarioResult& result);

/// heatmap.csv: header `N_E,n_exc,delta_max`; failed cells are omitted.
[[nodiscard]] std::string heatmap_csv(const HeatmapResult& result);

/// Simple SVG line plot of the scenario populations.
[[nodiscard]] std::string dynamics_svg(const ScenarioResult& result);

/// Simple SVG cell grid of delta_max over (N_E, n_exc).
[[nodiscard]] std::string heatmap_svg(const HeatmapResult& result);

void write_text_file(const std::string& path, const std::string& content);

} // namespace bathdiff
