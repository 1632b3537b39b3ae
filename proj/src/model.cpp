#include "ighc/model.hpp"

#include <cmath>

#include "ighc/errors.hpp"
#include "ighc/fft.hpp"

namespace ighc {

ModelParams validate_params(double alpha, double b, double sigma, double eps_reg) {
    if (!(alpha > 0.0) || !(alpha < 3.0))
        throw ConfigError("model: alpha must lie in (0,3), got " + std::to_string(alpha));
    if (b < 0.0) throw ConfigError("model: b must be >= 0, got " + std::to_string(b));
    if (b > 0.0) {
        const double bound = std::min((1.0 + alpha) / 3.0, alpha / 2.0);
        if (b > bound + 1e-15)
            throw ConfigError("model: b = " + std::to_string(b) +
                              " exceeds min((1+alpha)/3, alpha/2) = " + std::to_string(bound));
    }
    if (sigma != 1.0 && sigma != -1.0) throw ConfigError("model: sign must be +1 or -1");
    if (eps_reg < 0.0) throw ConfigError("model: eps_reg must be positive (or 0 for grid default)");
    ModelParams prm;
    prm.alpha = alpha;
    prm.b = b;
    prm.p = 3.0 + alpha - 2.0 * b;
    prm.sigma = sigma;
    prm.eps_reg = eps_reg;
    // p >= 3 is forced by b <= alpha/2
    if (prm.p < 3.0 - 1e-12) throw ConfigError("model: derived p < 3 (inconsistent alpha, b)");
    return prm;
}

double riesz_constant(double alpha) {
    if (!(alpha > 0.0) || !(alpha < 3.0)) throw ConfigError("riesz_constant: alpha out of (0,3)");
    return std::tgamma((3.0 - alpha) / 2.0) /
           (std::tgamma(alpha / 2.0) * std::pow(M_PI, 1.5) * std::pow(2.0, alpha));
}

double effective_eps(const ModelParams& prm, const GridSpec& g) {
    return prm.eps_reg > 0.0 ? prm.eps_reg : g.h;
}

RieszOperator::RieszOperator(Grid g, double a) : alpha(a), grid(std::move(g)) {
    const auto& gr = *grid;
    multiplier.assign(gr.points(), 0.0);
    const int n = gr.n;
    std::size_t idx = 0;
    for (int ix = 0; ix < n; ++ix) {
        const double kx2 = gr.wave[ix] * gr.wave[ix];
        for (int iy = 0; iy < n; ++iy) {
            const double ky2 = gr.wave[iy] * gr.wave[iy];
            for (int iz = 0; iz < n; ++iz, ++idx) {
                const double kz = gr.wave[iz];
                const double k2 = kx2 + ky2 + kz * kz;
                multiplier[idx] = k2 > 0.0 ? std::pow(k2, -alpha / 2.0) : 0.0;
            }
        }
    }
}

ScalarField RieszOperator::apply(const ScalarField& f, bool warn_on_mean) const {
    if (warn_on_mean) {
        // Zero-mode removal deviates from the R^3 operator when the source has
        // a sizable mean; flag it so experiments keep sources localized.
        double l1 = 0.0;
        cplx sum = 0.0;
        for (const auto& z : f.v) {
            l1 += std::abs(z);
            sum += z;
        }
        if (std::abs(sum) > 1e-3 * l1 && l1 > 0.0)
            warn("apply_riesz: source mean |int f| = " +
                 std::to_string(std::abs(sum) * std::pow(grid->h, 3)) +
                 " exceeds 1e-3 of its L1 mass; torus zero-mode removal deviates from the R^3 operator");
    }
    ScalarField out(f.grid);
    out.v = f.v;
    fft3(grid->n, out.v.data(), true);
    for (std::size_t i = 0; i < out.v.size(); ++i) out.v[i] *= multiplier[i];
    fft3(grid->n, out.v.data(), false);
    return out;
}

SingularWeight::SingularWeight(const GridSpec& g, double b_, double eps_) : b(b_), eps(eps_) {
    w.assign(g.points(), 1.0);
    if (b == 0.0) return;
    const int n = g.n;
    std::size_t idx = 0;
    for (int ix = 0; ix < n; ++ix) {
        const double x2 = g.coord[ix] * g.coord[ix];
        for (int iy = 0; iy < n; ++iy) {
            const double y2 = g.coord[iy] * g.coord[iy];
            for (int iz = 0; iz < n; ++iz, ++idx) {
                const double z = g.coord[iz];
                w[idx] = std::pow(x2 + y2 + z * z + eps * eps, -b / 2.0);
            }
        }
    }
}

Model::Model(Grid g, ModelParams prm)
    : prm_(prm), grid_(g), w_(*g, prm.b, effective_eps(prm, *g)), riesz_(g, prm.alpha) {}

namespace {

// |u|^q pointwise, taking the cheap path for integer exponents.
inline double abs_pow(double norm2, double q) {
    if (q == 2.0) return norm2;
    if (q == 4.0) return norm2 * norm2;
    if (q == 3.0) return norm2 * std::sqrt(norm2);
    if (q == 5.0) return norm2 * norm2 * std::sqrt(norm2);
    return std::pow(norm2, q / 2.0);
}

}  // namespace

ScalarField Model::weighted_power(const ScalarField& u) const {
    const double p = prm_.p;
    // overflow guard: |u|_inf^p must stay in double range
    const double mx = norm_inf(u);
    if (mx > 0.0 && p * std::log(mx) > 690.0)
        throw NumericalError("weighted_power: |u|_inf^p overflows double range");
    ScalarField g(u.grid);
    for (std::size_t i = 0; i < u.v.size(); ++i)
        g.v[i] = w_.w[i] * abs_pow(std::norm(u.v[i]), p);
    return g;
}

ScalarField Model::hartree_phase(const ScalarField& u) const {
    ScalarField g = weighted_power(u);
    ScalarField G = riesz_.apply(g, /*warn_on_mean=*/false);
    const double pm2 = prm_.p - 2.0;
    ScalarField phi(u.grid);
    for (std::size_t i = 0; i < u.v.size(); ++i) {
        const double re = prm_.sigma * w_.w[i] * G.v[i].real() * abs_pow(std::norm(u.v[i]), pm2);
        phi.v[i] = re;
    }
    return phi;
}

double Model::potential(const ScalarField& u) const {
    ScalarField g = weighted_power(u);
    ScalarField G = riesz_.apply(g, /*warn_on_mean=*/false);
    double acc = 0.0;
    for (std::size_t i = 0; i < g.v.size(); ++i) acc += G.v[i].real() * g.v[i].real();
    const double h = grid_->h;
    return acc * h * h * h;
}

double Model::energy(const ScalarField& u) const {
    const double K = sobolev_h1dot(u);
    return K * K - prm_.sigma * potential(u) / prm_.p;
}

ScalarField apply_riesz(const ScalarField& f, double alpha) {
    return RieszOperator(f.grid, alpha).apply(f);
}

ScalarField hartree_phase(const ScalarField& u, const ModelParams& prm) {
    return Model(u.grid, prm).hartree_phase(u);
}

double potential_energy(const ScalarField& u, const ModelParams& prm) {
    return Model(u.grid, prm).potential(u);
}

double energy(const ScalarField& u, const ModelParams& prm) {
    return Model(u.grid, prm).energy(u);
}

double mass(const ScalarField& u) {
    double acc = 0.0;
    for (const auto& z : u.v) acc += std::norm(z);
    const double h = u.grid->h;
    return acc * h * h * h;
}

}  // namespace ighc
