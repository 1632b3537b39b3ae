#pragma once

#include "ighc/evolution.hpp"
#include "ighc/rational.hpp"

namespace ighc {

/// Radial Morawetz weight: a = |x|^2 everywhere (quadratic), or |x|^2 for
/// |x| <= R glued by a C^2 quintic onto the plateau C R^2 for |x| >= 2R.
struct MorawetzWeight {
    enum class Kind { Quadratic, Truncated };
    Kind kind = Kind::Quadratic;
    double R = 0.0;
    double C_plateau = 2.0;

    static MorawetzWeight quadratic() { return {}; }
    static MorawetzWeight truncated(double R, double L, double C = 2.0);

    struct Radial {
        double a, da, dda;  // a(r), a'(r), a''(r)
    };
    Radial eval(double r) const;
    /// max over the transition band of |a'|/R and |a''| (the |D^j a| <~ R^{2-j}
    /// bounds, checked numerically at construction).
    std::pair<double, double> derivative_bounds() const;
};

/// M_a = 2 Im int conj(u) grad(u).grad(a); quadratic weight: 4 Im int conj(u) x.grad(u).
double morawetz_action(const ScalarField& u, const MorawetzWeight& w);

/// 8 (K(u) - sigma P(u)): the quadratic-weight Morawetz derivative.
double virial_rhs(const ScalarField& u, const ModelParams& prm);

/// 6(2 - 4/p) + 8b/p + 4(3 - alpha)/p with p = 3 + alpha - 2b, in exact
/// rational arithmetic. Equals 8 for every admissible (alpha, b).
Rational virial_coefficient_sum(const Rational& alpha, const Rational& b);

struct TruncatedMorawetz {
    double value = 0.0;        // sum of all five terms
    double local_terms = 0.0;  // the four single-integral terms
    double double_term = 0.0;  // pair term (FFT shortcut inside |x|<=R, strided outside)
    double richardson_delta = 0.0;
    bool warned = false;
};
TruncatedMorawetz morawetz_rhs_truncated(const ScalarField& u, const MorawetzWeight& w,
                                         const ModelParams& prm, int stride = 4);

/// Exterior integral of |grad u|^2 + |x|^{-2}|u|^2 + (I_a conv w|u|^p) w|u|^p
/// over |x| > R (sharp cutoff; the |x|^{-2} factor uses the model's
/// regularization length).
double tightness_measure(const ScalarField& u, double R, const ModelParams& prm);

/// Smallest dyadic N with |P_{<=N} u|_{H1dot}^2 >= 1/2 |u|_{H1dot}^2,
/// floored at 2 pi / L.
double frequency_scale(const ScalarField& u);

/// Spatial exponent of the S^1 mixed norm: 6p/(p-2).
double s1_space_exponent(double p);
/// Trajectory S^1 accumulation (from the records).
double s1_accumulate(const Trajectory& traj);

struct ScatterVerdict {
    bool scattered = false;
    bool conclusive = false;
    double t_detect = -1.0;
    double pullback_drift = 0.0;   // sup window H1dot increments of e^{-it lap} u(t), relative
    double P_decay_factor = 0.0;   // P(u0) / P(u(t_end))
    double S1_total = 0.0;
    ScalarField u_plus;            // free-field candidate v(t_end)
};

/// Definition-1.1-style detector on checkpointed pullbacks: scattered when the
/// last `window` pullbacks move less than tol * Hdot(u0) pairwise AND the
/// potential has decayed by decay_factor. One criterion met = inconclusive.
ScatterVerdict scattering_detector(const Trajectory& traj, const ModelParams& prm, double tol,
                                   int window, double decay_factor = 100.0);

}  // namespace ighc
