#pragma once

#include "bathdiff/dynamics.hpp"
#include "bathdiff/me2.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bathdiff {

/// One paired fermion/spin/ME2 run. When `coupling` is set it overrides the
/// golden-rule parameterization and `horizon` is an absolute time; otherwise
/// V = coupling_from_rate(gamma, omega_bw, n_bath) and `horizon` is the
/// dimensionless gamma * t_max.
struct ScenarioConfig {
    int n_bath = 3;
    int n_exc = 2;
    double omega_bw = 2.0;
    double gamma = 1.0;
    std::optional<double> coupling;
    double omega0 = 0.0;
    double horizon = 10.0;
    int n_steps = 1000;
    std::optional<std::vector<int>> occupied_modes; // full mode indices (0 = system site)
    bool with_me2 = true;
};

/// V = sqrt(gamma * omega_bw / (2 pi N_E)): uniform coupling reproducing the
/// golden-rule rate gamma for N_E modes spanning omega_bw.
[[nodiscard]] double coupling_from_rate(double gamma, double omega_bw, int n_bath);

struct ScenarioResult {
    TimeGrid grid;
    TimeSeries fermion;
    TimeSeries spin;
    std::optional<TimeSeries> me2;
    // Numerical diagnostics for the run manifest.
    double norm_drift_fermion = 0.0;
    double norm_drift_spin = 0.0;
    double me2_trace_drift = 0.0;
    std::size_t sector_dim = 0;
    PropagationMethod method = PropagationMethod::DenseEig;
};

/// Build the model on the default uniform band, fill the n_exc
/// lowest-frequency bath modes (system empty) unless occupied_modes says
/// otherwise, and run fermion ED, spin ED and (optionally) ME2 with the
/// matching step occupation on one shared grid.
[[nodiscard]] ScenarioResult run_scenario(const ScenarioConfig& cfg);

/// max_i |a_i - b_i| over identical grids.
[[nodiscard]] double delta_max(const TimeSeries& a, const TimeSeries& b);

struct SweepConfig {
    int n_bath_min = 2;
    int n_bath_max = 12;
    double gamma = 1.0;
    double omega_bw_factor = 4.0; // omega_bw = factor * gamma
    double horizon = 10.0;
    int n_steps = 1000;
    bool with_me2 = false;
};

struct HeatmapRow {
    int n_bath = 0;
    int n_exc = 0;
    double delta_max = 0.0;
    std::optional<double> me2_gap; // max_t |n_fermion - n_me2| when requested
    bool ok = true;
    std::string error;
};

struct HeatmapResult {
    std::vector<HeatmapRow> rows; // ordered by (n_bath, n_exc)
};

/// Delta_max over every (N_E, n_exc) cell, N_E in [n_bath_min, n_bath_max],
/// n_exc in 0..N_E. Cells are independent; `threads` of them run
/// concurrently. Per-cell failures are recorded and the sweep continues.
[[nodiscard]] HeatmapResult heatmap_sweep(const SweepConfig& cfg, int threads = 1);

} // namespace bathdiff
