#pragma once

#include <optional>

#include "ighc/field.hpp"
#include "ighc/spectral.hpp"

namespace ighc {

/// Equation parameters. p = 3 + alpha - 2b is derived and stored.
/// sigma = +1 focusing, -1 defocusing. eps_reg regularizes |x|^-b as
/// (|x|^2 + eps^2)^(-b/2); eps_reg <= 0 means "use the grid spacing".
struct ModelParams {
    double alpha = 2.0;
    double b = 0.5;
    double p = 4.0;
    double sigma = 1.0;
    double eps_reg = 0.0;
};

/// Validates alpha in (0,3), b in [0, min((1+alpha)/3, alpha/2)], computes p.
/// Throws ConfigError naming the violated constraint.
ModelParams validate_params(double alpha, double b, double sigma, double eps_reg = 0.0);

/// K = Gamma((3-alpha)/2) / (Gamma(alpha/2) pi^{3/2} 2^alpha): the constant of
/// the Riesz kernel K/|x|^{3-alpha}. Only the direct-space oracle needs it.
double riesz_constant(double alpha);

/// Riesz potential as a Fourier multiplier |k|^-alpha with the zero mode
/// annihilated (mean removal). Warns when |mean f| L^3 > 1e-3 ||f||_L1.
struct RieszOperator {
    double alpha;
    Grid grid;
    std::vector<double> multiplier;  // |k|^-alpha, m(0)=0, FFT storage order

    RieszOperator(Grid g, double alpha);
    /// warn_on_mean: the mean-localization audit is meant for externally
    /// supplied sources; the model's internal convolutions of w|u|^p (whose
    /// mean is part of the scheme by construction) pass false.
    ScalarField apply(const ScalarField& f, bool warn_on_mean = true) const;
};

/// Sampled regularized weight w(x) = (|x|^2 + eps^2)^(-b/2); w == 1 for b = 0.
struct SingularWeight {
    double b;
    double eps;
    std::vector<double> w;

    SingularWeight(const GridSpec& g, double b, double eps);
};

/// Precomputed operator bundle for one (grid, params) pair. All member
/// functions are pure with respect to the field argument.
class Model {
  public:
    Model(Grid g, ModelParams prm);

    const ModelParams& params() const { return prm_; }
    const Grid& grid() const { return grid_; }
    const SingularWeight& weight() const { return w_; }
    const RieszOperator& riesz() const { return riesz_; }

    ScalarField apply_riesz(const ScalarField& f) const { return riesz_.apply(f); }

    /// Phi = sigma * w * (I_alpha conv (w |u|^p)) * |u|^(p-2) (real field).
    ScalarField hartree_phase(const ScalarField& u) const;

    /// P(u) = integral (I_alpha conv (w|u|^p)) w|u|^p >= 0.
    double potential(const ScalarField& u) const;

    /// E(u) = K(u) - sigma P(u)/p with K = |grad u|_L2^2.
    double energy(const ScalarField& u) const;

    /// w |u|^p as a real field (shared building block).
    ScalarField weighted_power(const ScalarField& u) const;

  private:
    ModelParams prm_;
    Grid grid_;
    SingularWeight w_;
    RieszOperator riesz_;
};

// Spec-level free functions (construct the tables on the fly; evolution and
// the ground-state solver hold a Model instead).
ScalarField apply_riesz(const ScalarField& f, double alpha);
ScalarField hartree_phase(const ScalarField& u, const ModelParams& prm);
double potential_energy(const ScalarField& u, const ModelParams& prm);
double energy(const ScalarField& u, const ModelParams& prm);
double mass(const ScalarField& u);

/// Resolve eps_reg: explicit value, or the grid spacing when unset.
double effective_eps(const ModelParams& prm, const GridSpec& g);

}  // namespace ighc
