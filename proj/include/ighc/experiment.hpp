#pragma once

#include <map>
#include <optional>
#include <string>

#include "ighc/diagnostics.hpp"

namespace ighc {

enum class Scenario { GroundState, Evolve, Dichotomy, Defocusing, HomogeneousRadial, GnSample };

struct InitConfig {
    std::string family = "gaussian";  // gaussian | bubble | scaled_ground_state
    double amplitude = 1.0;
    double width = 1.0;
    double scale = 1.0;  // lambda passed to rescale_field
    std::array<double, 3> center = {0.0, 0.0, 0.0};
    std::string ground_state_path;  // optional checkpoint for scaled_ground_state
};

struct ExperimentConfig {
    Scenario scenario = Scenario::GroundState;
    std::uint64_t seed = 0;
    int grid_n = 64;
    double grid_L = 20.0;
    double alpha = 2.0;
    double b = 0.5;
    double sigma = 1.0;
    double eps_reg = 0.0;
    InitConfig init;
    EvolveConfig evolve;
    // diagnostics
    double detector_tol = 1e-3;
    int detector_window = 6;
    double decay_factor = 100.0;
    double morawetz_R = 4.0;
    int stride = 4;
    // ground-state solve
    WeinsteinConfig weinstein;
    bool richardson_box = false;  // re-solve at 1.5 L as a truncation-bias delta
    // dichotomy / gn
    std::vector<double> dichotomy_amplitudes = {0.3, 0.5, 0.7, 0.9, 1.1, 1.3};
    int gn_samples = 200;
    // output
    std::string out_dir = "out";
    bool write_csv = true;
    bool write_json = true;
    bool write_checkpoints = true;

    std::string raw_text;  // original config text (hashed into the manifest)
};

/// Flat INI-like grammar (see docs/config-format.md). Unknown keys are errors.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

/// Binary field checkpoint (magic "IGHC1", little-endian, bit-exact round trip).
void save_checkpoint(const std::string& path, const ScalarField& u, const ModelParams& prm,
                     double t);
struct Checkpoint {
    ScalarField u;
    ModelParams prm;
    double t = 0.0;
};
Checkpoint load_checkpoint(const std::string& path, const Grid& expected_grid = nullptr);

/// Diagnostics CSV with the fixed column contract.
void write_trajectory_csv(const std::string& path, const Trajectory& traj,
                          const std::vector<double>& radii);

/// FNV-1a of the config text (manifest reproducibility key).
std::uint64_t fnv1a64(const std::string& s);

/// Runs the configured scenario; writes summary JSON, trajectory CSV,
/// checkpoints and a run manifest into cfg.out_dir. Returns 0 on success.
int run_experiment(const ExperimentConfig& cfg);

}  // namespace ighc
