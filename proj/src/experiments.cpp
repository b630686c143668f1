#include "bathdiff/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>
#include <thread>

namespace bathdiff {

double coupling_from_rate(double gamma, double omega_bw, int n_bath) {
    if (!(gamma > 0) || !(omega_bw > 0) || n_bath < 1) {
        throw ArgumentError("coupling_from_rate: gamma, omega_bw and N_E must be positive");
    }
    return std::sqrt(gamma * omega_bw / (2.0 * std::numbers::pi * n_bath));
}

namespace {

std::vector<int> default_occupied_modes(const std::vector<double>& bath_frequencies, int n_exc) {
    const int n = static_cast<int>(bath_frequencies.size());
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return bath_frequencies[a] < bath_frequencies[b];
    });
    std::vector<int> modes;
    modes.reserve(n_exc);
    for (int i = 0; i < n_exc; ++i) {
        modes.push_back(order[i] + 1); // bath-local -> full mode index
    }
    std::sort(modes.begin(), modes.end());
    return modes;
}

TimeSeries traced_population(const SparseHermitian& h, const SectorBasis& basis,
                             const Eigen::VectorXcd& psi0, const TimeGrid& grid,
                             PropagationMethod method, std::string label, double& norm_drift) {
    TimeSeries series{grid, std::vector<double>(grid.n_samples(), 0.0), std::move(label)};
    norm_drift = 0.0;
    evolve(h, psi0, grid, method, [&](int i, double, const Eigen::VectorXcd& psi) {
        series.values[i] = system_population(psi, basis);
        norm_drift = std::max(norm_drift, std::abs(psi.norm() - 1.0));
    });
    return series;
}

} // namespace

ScenarioResult run_scenario(const ScenarioConfig& cfg) {
    if (cfg.n_bath < 1) throw ArgumentError("run_scenario: N_E must be >= 1");
    if (cfg.n_exc < 0 || cfg.n_exc > cfg.n_bath) {
        throw ArgumentError("run_scenario: n_exc outside [0, N_E]");
    }
    if (!(cfg.horizon > 0) || cfg.n_steps < 1) {
        throw ArgumentError("run_scenario: horizon and n_steps must be positive");
    }

    const double v = cfg.coupling ? *cfg.coupling
                                  : coupling_from_rate(cfg.gamma, cfg.omega_bw, cfg.n_bath);
    const double t_max = cfg.coupling ? cfg.horizon : cfg.horizon / cfg.gamma;
    const TimeGrid grid{t_max, cfg.n_steps};

    ModelSpec model;
    model.omega0 = cfg.omega0;
    model.bath_frequencies = uniform_band_frequencies(cfg.n_bath, cfg.omega_bw);
    model.couplings.assign(cfg.n_bath, v);

    std::vector<int> occupied =
        cfg.occupied_modes ? *cfg.occupied_modes
                           : default_occupied_modes(model.bath_frequencies, cfg.n_exc);
    std::sort(occupied.begin(), occupied.end());
    int bath_occupied = 0;
    for (int m : occupied) {
        if (m < 0 || m > cfg.n_bath) throw ArgumentError("run_scenario: occupied mode out of range");
        if (m > 0) ++bath_occupied;
    }
    if (bath_occupied != cfg.n_exc) {
        throw ArgumentError("run_scenario: occupied_modes has " + std::to_string(bath_occupied) +
                            " bath modes, n_exc = " + std::to_string(cfg.n_exc));
    }

    const SectorBasis basis(cfg.n_bath + 1, static_cast<int>(occupied.size()));
    const Eigen::VectorXcd psi0 = initial_state(basis, occupied);

    ScenarioResult result;
    result.grid = grid;
    result.sector_dim = basis.size();
    result.method = choose_method(basis.size());

    model.statistics = Statistics::Fermion;
    const SparseHermitian h_fermion = build_many_body(model, basis);
    result.fermion = traced_population(h_fermion, basis, psi0, grid, result.method, "n_fermion",
                                       result.norm_drift_fermion);

    model.statistics = Statistics::Spin;
    const SparseHermitian h_spin = build_many_body(model, basis);
    result.spin = traced_population(h_spin, basis, psi0, grid, result.method, "n_spin",
                                    result.norm_drift_spin);

    if (cfg.with_me2) {
        std::vector<int> occupied_bath;
        bool system_occupied = false;
        for (int m : occupied) {
            if (m == 0) {
                system_occupied = true;
            } else {
                occupied_bath.push_back(m - 1);
            }
        }
        const BathOccupation occ = BathOccupation::step_from_modes(cfg.n_bath, occupied_bath);
        DensityMatrix2 rho0 = DensityMatrix2::Zero();
        rho0(system_occupied ? 1 : 0, system_occupied ? 1 : 0) = 1.0;
        Me2Result me2 = solve_me2(model, occ, rho0, grid);
        result.me2_trace_drift = me2.max_trace_drift;
        result.me2 = std::move(me2.population);
    }
    return result;
}

double delta_max(const TimeSeries& a, const TimeSeries& b) {
    if (a.grid != b.grid || a.values.size() != b.values.size()) {
        throw ArgumentError("delta_max: series are on different grids");
    }
    double d = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        d = std::max(d, std::abs(a.values[i] - b.values[i]));
    }
    return d;
}

HeatmapResult heatmap_sweep(const SweepConfig& cfg, int threads) {
    if (cfg.n_bath_min < 1 || cfg.n_bath_max < cfg.n_bath_min) {
        throw ArgumentError("heatmap_sweep: bad N_E range");
    }
    if (!(cfg.gamma > 0) || !(cfg.omega_bw_factor > 0)) {
        throw ArgumentError("heatmap_sweep: gamma and omega_bw_factor must be positive");
    }

    HeatmapResult result;
    for (int n = cfg.n_bath_min; n <= cfg.n_bath_max; ++n) {
        for (int x = 0; x <= n; ++x) {
            result.rows.push_back(HeatmapRow{n, x, 0.0, std::nullopt, true, ""});
        }
    }

    const int n_workers = std::max(1, threads);
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= result.rows.size()) return;
            HeatmapRow& row = result.rows[i];
            try {
                ScenarioConfig cell;
                cell.n_bath = row.n_bath;
                cell.n_exc = row.n_exc;
                cell.gamma = cfg.gamma;
                cell.omega_bw = cfg.omega_bw_factor * cfg.gamma;
                cell.horizon = cfg.horizon;
                cell.n_steps = cfg.n_steps;
                cell.with_me2 = cfg.with_me2;
                const ScenarioResult r = run_scenario(cell);
                row.delta_max = delta_max(r.fermion, r.spin);
                if (r.me2) row.me2_gap = delta_max(r.fermion, *r.me2);
            } catch (const std::exception& e) {
                row.ok = false;
                row.error = e.what();
            }
        }
    };

    if (n_workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (int t = 0; t < n_workers; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return result;
}

} // namespace bathdiff
