#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ighc/ground_state.hpp"
#include "ighc/model.hpp"

namespace ighc {

struct SpongeConfig {
    bool enabled = false;
    double width = 0.25;     // fraction of L/2 forming the absorbing shell
    double strength = 20.0;  // mask = exp(-strength * dt * ramp(|x|))
};

struct EvolveConfig {
    double dt = 1e-3;
    double t_end = 1.0;
    int record_every = 50;    // steps between diagnostic records (in units of the initial dt)
    double grad_cap = 0.0;    // 0 disables; multiples of Hdot_W when a ground state is given
    double tail_cap = 1e-3;   // spectral tail fraction beyond 2/3 Nyquist
    SpongeConfig sponge;
    int checkpoint_every = 4; // field checkpoints every k-th record (0 disables)
    std::vector<double> tight_radii = {2.5, 5.0};
    bool track_s1 = true;
    double phase_guard = 0.5; // dt |Phi|_inf cap; dt halves (stickily) when exceeded
};

struct StepRecord {
    double t = 0.0;
    double mass = 0.0;
    double energy = 0.0;
    double kinetic = 0.0;    // K = |grad u|_L2^2
    double potential = 0.0;  // P
    double hdot = 0.0;       // sqrt(K)
    double m_quad = 0.0;     // Morawetz action, quadratic weight
    double virial_rhs = 0.0; // 8 (K - sigma P)
    double n_t = 0.0;        // frequency scale
    std::vector<double> tightness;
    double s1_accum = 0.0;
    double tail_fraction = 0.0;
};

enum class StopReason { TEnd, GradCap, TailCap, StepFailure };
const char* to_string(StopReason r);

struct Trajectory {
    std::vector<StepRecord> records;
    std::vector<std::pair<double, ScalarField>> checkpoints;
    ScalarField final_state;
    double t_final = 0.0;
    StopReason stop = StopReason::TEnd;
    std::string stop_detail;
    double hdot_u0 = 0.0;
    double dt_final = 0.0;  // after any guard halvings
};

/// One Strang step: e^{i dt/2 lap} . phase . e^{i dt/2 lap}. The nonlinear
/// sub-flow multiplies pointwise by e^{i dt Phi} with Phi evaluated on the
/// half-stepped field; it is exact because |u| is invariant under it.
ScalarField strang_step(const ScalarField& u, double dt, const ModelParams& prm);

/// Split-step evolution with diagnostics records, checkpoints and stopping
/// rules. If gs is non-null, grad_cap is interpreted in multiples of Hdot_W.
Trajectory evolve(const ScalarField& u0, const EvolveConfig& cfg, const ModelParams& prm,
                  const GroundState* gs = nullptr);

/// Damping mask for one step of length dt (1 in the interior, smooth ramp in
/// the outer width-fraction shell).
ScalarField sponge_apply(const ScalarField& u, const SpongeConfig& sponge, double dt);

}  // namespace ighc
