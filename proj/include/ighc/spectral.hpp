#pragma once

#include "ighc/field.hpp"

namespace ighc {

/// Forward DFT, F[m] = sum_j f[j] e^{-2 pi i j.m / n}.
SpectrumField to_spectrum(const ScalarField& f);
/// Inverse DFT with the 1/n^3 normalization.
ScalarField from_spectrum(const SpectrumField& s);

/// Parseval: h^3 sum|f|^2 == parseval_constant(grid) * sum|fhat|^2.
double parseval_constant(const GridSpec& g);

/// h^3 * sum of samples (exact for resolved periodic integrands).
cplx integrate(const ScalarField& f);

/// (h^3 sum |f|^r)^(1/r); r = inf -> max |f|. Rejects r < 1.
double lp_norm(const ScalarField& f, double r);
double norm_inf(const ScalarField& f);
double norm_l2(const ScalarField& f);

/// Spectral gradient via the ik multiplier; Nyquist mode zeroed so
/// gradients of real fields stay real.
std::array<ScalarField, 3> gradient(const ScalarField& f);
ScalarField laplacian(const ScalarField& f);

/// |grad f|_{L^2} evaluated in spectrum (full |k|^2 weight, Nyquist included).
double sobolev_h1dot(const ScalarField& f);

/// Multiply spectrum by e^{-i |k|^2 t}.
ScalarField free_propagator(const ScalarField& f, double t);

/// lambda^{1/2} f(lambda x) by trigonometric interpolation. For lambda > 1 the
/// periodic interpolant is evaluated only where |lambda x|_inf < L/2 and the
/// output is zero outside (the wrapped copies of a dilated periodic function
/// are spurious; the precondition keeps the true field negligible there).
/// Rejects results whose spectral tail beyond (2/3) Nyquist exceeds 1e-6.
ScalarField rescale_field(const ScalarField& f, double lambda);

enum class LpKind { LessEqual, Equal, Greater };

/// Littlewood-Paley projection: multiplier psi(|k|/N), psi(|k|/N)-psi(2|k|/N)
/// or 1-psi(|k|/N). psi is 1 on |x|<=1, 0 on |x|>=11/10, quintic smoothstep
/// in between (C^2).
ScalarField littlewood_paley_project(const ScalarField& f, double N, LpKind kind);
double lp_symbol(double rho);  // psi as a function of |k|/N

/// Fraction of spectral energy with any |k_a| > frac * k_Nyquist.
double tail_fraction(const ScalarField& f, double frac = 2.0 / 3.0);

// small helpers shared across modules
ScalarField zeros_like(const ScalarField& f);
ScalarField conj(const ScalarField& f);
double h1dot_distance(const ScalarField& a, const ScalarField& b);

}  // namespace ighc
