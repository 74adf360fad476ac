// Command-line front end for the link-limit sweep experiments.
//
//   isaclim run <config.json>     run one experiment (or "all") from a config
//   isaclim validate <config.json>  strict-parse a config and echo it resolved
//   isaclim list-profiles         dump the built-in hardware profile registry

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "isaclim/experiment.hpp"
#include "isaclim/version.hpp"

namespace {

int cmd_run(const std::string& config_path, const std::string& output_dir, long long seed,
            bool seed_set, int threads) {
    using namespace isaclim::experiment;
    ExperimentConfig cfg = ExperimentConfig::load(config_path);
    if (!output_dir.empty()) cfg.output.directory = output_dir;
    if (seed_set) cfg.monte_carlo.seed = static_cast<std::uint64_t>(seed);

    std::vector<SweepResult> results;
    if (cfg.experiment == "all") {
        results = run_all(cfg, threads);
    } else {
        results.push_back(run_experiment(cfg, threads));
    }
    for (const auto& res : results) {
        std::printf("%-18s %4zu points  %6.2f s", res.experiment.c_str(), res.axis.size(),
                    res.wall_seconds);
        for (const auto& f : res.files) std::printf("  %s", f.c_str());
        std::printf("\n");
    }
    return 0;
}

int cmd_validate(const std::string& config_path) {
    using namespace isaclim::experiment;
    const ExperimentConfig cfg = ExperimentConfig::load(config_path);
    std::cout << cfg.echo().dump(2) << "\n";
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(cfg.hash()));
    std::cerr << "valid; config hash " << buf << "\n";
    return 0;
}

int cmd_list_profiles() {
    std::printf("%-18s %-18s %10s %10s %10s %10s %10s %9s %8s\n", "key", "name", "gamma_pa",
                "gamma_lo", "gamma_adc", "derived", "asserted", "bw(GHz)", "lw(kHz)");
    for (const auto& p : isaclim::hw::builtin_profiles()) {
        const auto g = p.derived_gammas();
        std::printf("%-18s %-18s %10.3e %10.3e %10.3e %10.3e %10.3e %9.0f %8.0f\n", p.key.c_str(),
                    p.name.c_str(), g.pa, g.lo, g.adc, g.total(), p.gamma_eff_asserted,
                    p.characteristic_bandwidth_hz / 1e9, p.linewidth_hz / 1e3);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"THz inter-satellite link sensing/communication limit sweeps"};
    app.set_version_flag("--version", isaclim::version_string);
    app.require_subcommand(1);

    std::string config_path;
    std::string output_dir;
    long long seed = 0;
    int threads = 0;

    auto* run = app.add_subcommand("run", "run the experiment(s) described by a config file");
    run->add_option("config", config_path, "config file (JSON, comments allowed)")
        ->required()
        ->check(CLI::ExistingFile);
    run->add_option("-o,--output", output_dir, "override the output directory");
    auto* seed_opt = run->add_option("--seed", seed, "override the Monte Carlo seed");
    run->add_option("-j,--threads", threads, "parallelism degree (0 = hardware)");

    auto* validate = app.add_subcommand("validate", "strict-parse a config and echo it resolved");
    validate->add_option("config", config_path, "config file")->required()->check(CLI::ExistingFile);

    auto* list = app.add_subcommand("list-profiles", "print the hardware profile registry");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(config_path, output_dir, seed, seed_opt->count() > 0, threads);
        if (validate->parsed()) return cmd_validate(config_path);
        if (list->parsed()) return cmd_list_profiles();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
