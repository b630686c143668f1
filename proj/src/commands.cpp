#include "bathdiff/commands.hpp"

#include "bathdiff/config.hpp"
#include "bathdiff/output.hpp"
#include "bathdiff/version.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <random>
#include <thread>

namespace bathdiff {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

int effective_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

json raw_config_json(const ParsedConfig& cfg) {
    json j = json::object();
    for (const auto& [section, keys] : cfg.raw) {
        json sec = json::object();
        for (const auto& [k, v] : keys) sec[k] = v;
        j[section] = sec;
    }
    return j;
}

/// Record an output file in the manifest, insisting it exists and is non-empty.
void note_output(json& outputs, const std::string& path) {
    if (!fs::exists(path) || fs::file_size(path) == 0) {
        throw NumericalError("manifest: output file '" + path + "' missing or empty");
    }
    outputs.push_back(path);
}

void write_manifest(const std::string& path, json manifest) {
    write_text_file(path, manifest.dump(2) + "\n");
}

} // namespace

void cmd_dynamics(const CommandOptions& opts) {
    const auto started = std::chrono::steady_clock::now();
    const ParsedConfig cfg = parse_config_file(opts.config_path);
    if (!cfg.scenario) {
        throw ConfigError("config: dynamics needs a [scenario] section");
    }

    fs::create_directories(opts.out_dir);
    const ScenarioResult result = run_scenario(*cfg.scenario);

    const std::string csv_path = (fs::path(opts.out_dir) / "dynamics.csv").string();
    write_text_file(csv_path, dynamics_csv(result));
    std::string svg_path;
    if (!opts.no_plot) {
        svg_path = (fs::path(opts.out_dir) / "dynamics.svg").string();
        write_text_file(svg_path, dynamics_svg(result));
    }

    json manifest;
    manifest["tool"] = "bathdiff";
    manifest["version"] = std::string(kVersion);
    manifest["command"] = "dynamics";
    manifest["config"] = raw_config_json(cfg);
    manifest["diagnostics"] = {
        {"sector_dim", result.sector_dim},
        {"method", result.method == PropagationMethod::DenseEig ? "DenseEig" : "Krylov"},
        {"norm_drift_fermion", result.norm_drift_fermion},
        {"norm_drift_spin", result.norm_drift_spin},
        {"me2_trace_drift", result.me2_trace_drift},
        {"delta_max_fermion_spin", delta_max(result.fermion, result.spin)},
    };
    json outputs = json::array();
    note_output(outputs, csv_path);
    if (!svg_path.empty()) note_output(outputs, svg_path);
    manifest["outputs"] = outputs;
    manifest["duration_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    write_manifest((fs::path(opts.out_dir) / "manifest.json").string(), std::move(manifest));
}

void cmd_heatmap(const CommandOptions& opts) {
    const auto started = std::chrono::steady_clock::now();
    const ParsedConfig cfg = parse_config_file(opts.config_path);
    if (!cfg.sweep) {
        throw ConfigError("config: heatmap needs a [sweep] section");
    }

    fs::create_directories(opts.out_dir);
    const HeatmapResult result = heatmap_sweep(*cfg.sweep, effective_threads(opts.threads));

    const std::string csv_path = (fs::path(opts.out_dir) / "heatmap.csv").string();
    write_text_file(csv_path, heatmap_csv(result));
    std::string svg_path;
    if (!opts.no_plot) {
        svg_path = (fs::path(opts.out_dir) / "heatmap.svg").string();
        write_text_file(svg_path, heatmap_svg(result));
    }

    json failed = json::array();
    for (const HeatmapRow& row : result.rows) {
        if (!row.ok) {
            failed.push_back({{"N_E", row.n_bath}, {"n_exc", row.n_exc}, {"error", row.error}});
        }
    }

    json manifest;
    manifest["tool"] = "bathdiff";
    manifest["version"] = std::string(kVersion);
    manifest["command"] = "heatmap";
    manifest["config"] = raw_config_json(cfg);
    manifest["failed_cells"] = failed;
    json outputs = json::array();
    note_output(outputs, csv_path);
    if (!svg_path.empty()) note_output(outputs, svg_path);
    manifest["outputs"] = outputs;
    manifest["duration_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    write_manifest((fs::path(opts.out_dir) / "manifest.json").string(), std::move(manifest));
}

void cmd_corr4(const std::string& statistics, const std::array<int, 4>& modes,
               const std::vector<double>& f) {
    CorrQuery q;
    if (statistics == "fermion") {
        q.statistics = Statistics::Fermion;
    } else if (statistics == "spin") {
        q.statistics = Statistics::Spin;
    } else {
        throw ConfigError("corr4: statistics must be 'fermion' or 'spin', got '" + statistics +
                          "'");
    }
    if (f.empty()) throw ConfigError("corr4: need at least one occupation via --f");
    q.modes = modes;
    q.occ.f = f;

    const std::complex<double> closed = corr4_closed(q);
    const std::complex<double> brute = corr4_bruteforce(q);
    const auto print_complex = [](const char* name, std::complex<double> v) {
        std::printf("%-12s = %s", name, format_double(v.real()).c_str());
        if (v.imag() != 0.0) {
            std::printf(" %s%si", v.imag() > 0 ? "+" : "", format_double(v.imag()).c_str());
        }
        std::printf("\n");
    };
    print_complex("closed_form", closed);
    print_complex("bruteforce", brute);
    std::printf("%-12s = %s\n", "abs_diff", format_double(std::abs(closed - brute)).c_str());
}

namespace {

bool check_hop_sign_oracle() {
    for (int n_modes = 2; n_modes <= 5; ++n_modes) {
        for (Statistics stat : {Statistics::Fermion, Statistics::Spin}) {
            std::vector<Eigen::MatrixXcd> lower;
            for (int k = 0; k < n_modes; ++k) lower.push_back(dense_lowering(k, n_modes, stat));
            for (int i = 0; i < n_modes; ++i) {
                for (int j = 0; j < n_modes; ++j) {
                    if (i == j) continue;
                    const Eigen::MatrixXcd hop_dense = lower[i].adjoint() * lower[j];
                    for (OccMask s = 0; s < (OccMask{1} << n_modes); ++s) {
                        const auto hop = apply_hop(s, i, j, stat);
                        for (OccMask r = 0; r < (OccMask{1} << n_modes); ++r) {
                            const std::complex<double> expected =
                                hop && hop->state == r ? std::complex<double>(hop->sign) : 0.0;
                            if (std::abs(hop_dense(static_cast<long>(r), static_cast<long>(s)) -
                                         expected) > 1e-14) {
                                return false;
                            }
                        }
                    }
                }
            }
        }
    }
    return true;
}

bool check_single_body_equivalence() {
    ScenarioConfig cfg;
    cfg.n_bath = 6;
    cfg.n_exc = 3;
    cfg.omega_bw = 4.0;
    cfg.gamma = 1.0;
    cfg.with_me2 = false;
    const ScenarioResult r = run_scenario(cfg);

    ModelSpec model;
    model.omega0 = cfg.omega0;
    model.bath_frequencies = uniform_band_frequencies(cfg.n_bath, cfg.omega_bw);
    model.couplings.assign(cfg.n_bath, coupling_from_rate(cfg.gamma, cfg.omega_bw, cfg.n_bath));
    std::vector<int> occ(cfg.n_bath + 1, 0);
    for (int k = 1; k <= cfg.n_exc; ++k) occ[k] = 1;
    const TimeSeries one_body =
        single_body_population(build_single_body(model), occ, r.grid);
    return delta_max(r.fermion, one_body) <= 1e-8;
}

bool check_corr4_oracle() {
    std::mt19937 rng(20240817);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    for (int trial = 0; trial < 5; ++trial) {
        BathOccupation occ;
        occ.f = {dist(rng), dist(rng), dist(rng)};
        for (Statistics stat : {Statistics::Fermion, Statistics::Spin}) {
            for (int k1 = 0; k1 < 3; ++k1)
                for (int k2 = 0; k2 < 3; ++k2)
                    for (int k3 = 0; k3 < 3; ++k3)
                        for (int k4 = 0; k4 < 3; ++k4) {
                            const CorrQuery q{{k1, k2, k3, k4}, stat, occ};
                            if (std::abs(corr4_closed(q) - corr4_bruteforce(q)) > 1e-12) {
                                return false;
                            }
                        }
        }
    }
    return true;
}

bool check_me2_conservation() {
    ModelSpec model;
    model.omega0 = 0.0;
    model.bath_frequencies = uniform_band_frequencies(8, 4.0);
    model.couplings.assign(8, coupling_from_rate(1.0, 4.0, 8));
    const BathOccupation occ = BathOccupation::step(model.bath_frequencies, 4);
    DensityMatrix2 rho0 = DensityMatrix2::Zero();
    rho0(0, 0) = 1.0;
    const TimeGrid grid{10.0, 1000};

    model.statistics = Statistics::Fermion;
    const Me2Result a = solve_me2(model, occ, rho0, grid);
    model.statistics = Statistics::Spin;
    const Me2Result b = solve_me2(model, occ, rho0, grid);

    if (a.max_trace_drift > 1e-8 || a.max_hermiticity_error > 1e-10) return false;
    return a.population.values == b.population.values; // statistics-blind, bit for bit
}

} // namespace

bool cmd_validate() {
    struct Check {
        const char* name;
        bool (*run)();
    };
    const Check checks[] = {
        {"hop-sign-oracle", check_hop_sign_oracle},
        {"single-body-equivalence", check_single_body_equivalence},
        {"corr4-oracle", check_corr4_oracle},
        {"me2-conservation", check_me2_conservation},
    };

    bool all_ok = true;
    std::printf("%-28s %s\n", "check", "status");
    for (const Check& c : checks) {
        bool ok = false;
        std::string note;
        try {
            ok = c.run();
        } catch (const std::exception& e) {
            note = e.what();
        }
        all_ok = all_ok && ok;
        std::printf("%-28s %s%s%s\n", c.name, ok ? "PASS" : "FAIL", note.empty() ? "" : "  ",
                    note.c_str());
    }
    return all_ok;
}

} // namespace bathdiff
