#pragma once

#include "ighc/model.hpp"

namespace ighc {

/// Output of the variational solve. W solves the mean-zero-projected discrete
/// elliptic equation to machine precision at the canonical (int W = 0) family
/// member, so K_W = P_W, E_W = (1-1/p) K_W and C0 K_W^{p-1} = 1 hold exactly.
/// `residual` is the unprojected relative residual |lap W + N(W)| / |lap W|;
/// on a torus it bottoms out at the zero-mode floor int N / (L^{3/2} |lap W|),
/// reported in `mean_defect` (see also residual_projected).
struct GroundState {
    ScalarField W;
    double K_W = 0.0;
    double P_W = 0.0;
    double C0 = 0.0;
    double E_W = 0.0;
    double Hdot_W = 0.0;
    double residual = 0.0;
    double residual_projected = 0.0;  // solver convergence, ~1e-12
    double mean_defect = 0.0;         // int N(W) dx (the torus obstruction)
    int ascent_iters = 0;
    int newton_iters = 0;
};

struct WeinsteinConfig {
    int max_iters = 400;       // ascent iteration budget
    double tau0 = 1.0;         // initial step (line search grows/halves it)
    double j_tol = 1e-13;      // stop when relative J gain falls below this
    int newton_max = 80;       // projected-Newton outer iterations (0 disables)
    double newton_tol = 1e-12; // target |Pi0 F| / |lap W|
    int minres_max = 300;
    bool canonicalize = true;  // move to the int W = 0 family member
    int verbose = 0;           // print every k-th ascent/newton step
};

/// J(f) = P(f) / |grad f|_L2^{2p}. Rejects the zero field.
double weinstein_functional(const ScalarField& f, const ModelParams& prm);

/// Sobolev-preconditioned ascent on J: d = (-lap)^{-1}[dP(f)], zero mode
/// dropped, f <- normalize(f + tau d), monotone J by step halving.
/// Requires a real, nonnegative, nonzero initializer.
ScalarField maximize_weinstein(const ScalarField& init, const WeinsteinConfig& cfg,
                               const ModelParams& prm);

/// Amplitude mu = (K/P)^{1/(2p-2)} read off the stationarity condition,
/// followed by projected-Newton refinement and canonicalization.
GroundState rescale_to_ground_state(const ScalarField& fstar, const ModelParams& prm,
                                    const WeinsteinConfig& cfg = {});

/// |lap W + w (I_alpha conv w|W|^p) |W|^{p-2} W|_L2 / |lap W|_L2.
double elliptic_residual(const ScalarField& W, const ModelParams& prm);

/// (E_W, Hdot_W, C0) with the energy cross-checked against energy(W).
struct Thresholds {
    double E_W;
    double Hdot_W;
    double C0;
};
Thresholds thresholds(const GroundState& gs);

struct ThresholdReport {
    double E_u0 = 0.0;
    double Hdot_u0 = 0.0;
    bool below_energy = false;
    bool below_kinetic = false;
    bool at_threshold = false;  // either comparison within 1e-9 relative
    double margin = 0.0;        // 1 - Hdot(u0)/Hdot_W
};
ThresholdReport threshold_check(const ScalarField& u0, const GroundState& gs,
                                const ModelParams& prm);

/// Convenience: full pipeline from an initializer.
GroundState solve_ground_state(const ScalarField& init, const ModelParams& prm,
                               const WeinsteinConfig& cfg = {});

/// Canonical initializers used by the scenarios.
ScalarField gaussian_init(const Grid& g, double amplitude, double width,
                          const std::array<double, 3>& center = {0, 0, 0});
ScalarField bubble_init(const Grid& g, double amplitude, double width);

}  // namespace ighc
