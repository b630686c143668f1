#include "bathdiff/commands.hpp"
#include "bathdiff/errors.hpp"
#include "bathdiff/version.hpp"

#include <CLI11.hpp>

#include <array>
#include <cstdio>
#include <string>
#include <vector>

namespace {

// Exit codes: 0 success, 1 validation failure, 2 bad config/arguments,
// 3 capacity exceeded, 4 numerical failure.
int run(int argc, char** argv) {
    CLI::App app{"bathdiff: fermionic vs spin-1/2 bath dynamics in the resonant-level model"};
    app.set_version_flag("--version", std::string(bathdiff::kVersion));
    app.require_subcommand(1);

    bathdiff::CommandOptions opts;

    auto* dynamics = app.add_subcommand("dynamics", "paired fermion/spin/ME2 population run");
    dynamics->add_option("--config", opts.config_path, "scenario config file")->required();
    dynamics->add_option("--out", opts.out_dir, "output directory");
    dynamics->add_option("--threads", opts.threads, "worker threads");
    dynamics->add_flag("--no-plot", opts.no_plot, "skip SVG output");

    auto* heatmap = app.add_subcommand("heatmap", "delta_max sweep over (N_E, n_exc)");
    heatmap->add_option("--config", opts.config_path, "sweep config file")->required();
    heatmap->add_option("--out", opts.out_dir, "output directory");
    heatmap->add_option("--threads", opts.threads, "worker threads");
    heatmap->add_flag("--no-plot", opts.no_plot, "skip SVG output");

    std::string statistics;
    std::array<int, 4> modes{};
    std::vector<double> f_values;
    auto* corr4 = app.add_subcommand("corr4", "four-point bath correlator, closed form vs oracle");
    corr4->add_option("statistics", statistics, "fermion | spin")->required();
    corr4->add_option("k1", modes[0])->required();
    corr4->add_option("k2", modes[1])->required();
    corr4->add_option("k3", modes[2])->required();
    corr4->add_option("k4", modes[3])->required();
    corr4->add_option("--f", f_values, "per-mode occupations f_k")->required()->delimiter(',');

    auto* validate = app.add_subcommand("validate", "run the built-in invariant suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help / --version
        app.exit(e);
        return 2;
    }

    try {
        if (dynamics->parsed()) {
            bathdiff::cmd_dynamics(opts);
        } else if (heatmap->parsed()) {
            bathdiff::cmd_heatmap(opts);
        } else if (corr4->parsed()) {
            bathdiff::cmd_corr4(statistics, modes, f_values);
        } else if (validate->parsed()) {
            return bathdiff::cmd_validate() ? 0 : 1;
        }
    } catch (const bathdiff::ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const bathdiff::ArgumentError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const bathdiff::CapacityError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const bathdiff::NumericalError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    return run(argc, argv);
}
