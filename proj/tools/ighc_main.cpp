#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

#include "ighc/errors.hpp"
#include "ighc/experiment.hpp"
#include "ighc/fft.hpp"

#include "acceptance_suite.hpp"

namespace {

int run_config(const std::string& path, const std::string& out_dir, long long seed, int threads) {
    ighc::fft_set_threads(threads);
    ighc::ExperimentConfig cfg = ighc::parse_config_file(path);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
    return ighc::run_experiment(cfg);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ighc: pseudo-spectral toolkit for the 3D energy-critical "
                 "inhomogeneous generalized Hartree equation"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    long long seed = -1;
    int threads = 1;
    app.add_option("--output-dir", out_dir, "override [output] dir");
    app.add_option("--seed", seed, "override the config seed");
    app.add_option("--threads", threads, "FFT threads (default 1; results are "
                                         "byte-reproducible per thread count)");

    auto* run = app.add_subcommand("run", "run a scenario from a config file");
    run->add_option("config", config_path, "config file")->required();

    auto* gs = app.add_subcommand("ground-state", "ground-state solve (scenario override)");
    gs->add_option("config", config_path, "config file")->required();

    auto* sweep = app.add_subcommand("sweep", "dichotomy amplitude sweep (scenario override)");
    sweep->add_option("config", config_path, "config file")->required();

    auto* verify = app.add_subcommand("verify", "run the acceptance suite");
    std::string criteria = "all";
    verify->add_option("--criteria", criteria, "comma list of criterion numbers, or 'all'");

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed()) {
            ighc::fft_set_threads(threads);
            const bool ok = ighc::acceptance::run_suite(criteria, std::cout);
            return ok ? 0 : 4;
        }
        if (run->parsed()) return run_config(config_path, out_dir, seed, threads);
        if (gs->parsed() || sweep->parsed()) {
            ighc::fft_set_threads(threads);
            ighc::ExperimentConfig cfg = ighc::parse_config_file(config_path);
            cfg.scenario = gs->parsed() ? ighc::Scenario::GroundState : ighc::Scenario::Dichotomy;
            if (!out_dir.empty()) cfg.out_dir = out_dir;
            if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
            return ighc::run_experiment(cfg);
        }
    } catch (const ighc::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const ighc::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
