#include "ighc/spectral.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "ighc/errors.hpp"
#include "ighc/fft.hpp"

namespace ighc {

void require_finite(const ScalarField& f, const char* what) {
    if (!all_finite(f)) throw NumericalError(std::string(what) + ": field contains NaN/Inf");
}

bool all_finite(const ScalarField& f) {
    for (const auto& z : f.v)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

SpectrumField to_spectrum(const ScalarField& f) {
    SpectrumField s(f.grid);
    s.m = f.v;
    fft3(f.grid->n, s.m.data(), true);
    return s;
}

ScalarField from_spectrum(const SpectrumField& s) {
    ScalarField f(s.grid);
    f.v = s.m;
    fft3(s.grid->n, f.v.data(), false);
    return f;
}

double parseval_constant(const GridSpec& g) {
    return g.h * g.h * g.h / (static_cast<double>(g.n) * g.n * g.n);
}

cplx integrate(const ScalarField& f) {
    cplx s = 0.0;
    for (const auto& z : f.v) s += z;
    const double h = f.grid->h;
    return s * (h * h * h);
}

double norm_inf(const ScalarField& f) {
    double m = 0.0;
    for (const auto& z : f.v) m = std::max(m, std::abs(z));
    return m;
}

double lp_norm(const ScalarField& f, double r) {
    if (std::isinf(r)) return norm_inf(f);
    if (r < 1.0) throw ConfigError("lp_norm: r must be >= 1 or inf");
    const double h3 = f.grid->h * f.grid->h * f.grid->h;
    double s = 0.0;
    if (r == 2.0) {
        for (const auto& z : f.v) s += std::norm(z);
    } else {
        for (const auto& z : f.v) s += std::pow(std::norm(z), r / 2.0);
    }
    return std::pow(h3 * s, 1.0 / r);
}

double norm_l2(const ScalarField& f) { return lp_norm(f, 2.0); }

std::array<ScalarField, 3> gradient(const ScalarField& f) {
    const auto& g = *f.grid;
    SpectrumField s = to_spectrum(f);
    std::array<ScalarField, 3> out = {ScalarField(f.grid), ScalarField(f.grid), ScalarField(f.grid)};
    const int n = g.n;
    for (int axis = 0; axis < 3; ++axis) {
        auto& o = out[axis].v;
        std::size_t idx = 0;
        for (int ix = 0; ix < n; ++ix) {
            const double kx = g.wave_deriv[ix];
            for (int iy = 0; iy < n; ++iy) {
                const double ky = g.wave_deriv[iy];
                for (int iz = 0; iz < n; ++iz, ++idx) {
                    const double k = axis == 0 ? kx : (axis == 1 ? ky : g.wave_deriv[iz]);
                    o[idx] = cplx(0.0, k) * s.m[idx];
                }
            }
        }
        fft3(n, o.data(), false);
    }
    return out;
}

ScalarField laplacian(const ScalarField& f) {
    const auto& g = *f.grid;
    ScalarField out(f.grid);
    out.v = f.v;
    fft3(g.n, out.v.data(), true);
    const int n = g.n;
    std::size_t idx = 0;
    for (int ix = 0; ix < n; ++ix) {
        const double kx2 = g.wave[ix] * g.wave[ix];
        for (int iy = 0; iy < n; ++iy) {
            const double ky2 = g.wave[iy] * g.wave[iy];
            for (int iz = 0; iz < n; ++iz, ++idx) {
                const double kz = g.wave[iz];
                out.v[idx] *= -(kx2 + ky2 + kz * kz);
            }
        }
    }
    fft3(n, out.v.data(), false);
    return out;
}

double sobolev_h1dot(const ScalarField& f) {
    const auto& g = *f.grid;
    SpectrumField s = to_spectrum(f);
    const int n = g.n;
    double acc = 0.0;
    std::size_t idx = 0;
    for (int ix = 0; ix < n; ++ix) {
        const double kx2 = g.wave[ix] * g.wave[ix];
        for (int iy = 0; iy < n; ++iy) {
            const double ky2 = g.wave[iy] * g.wave[iy];
            for (int iz = 0; iz < n; ++iz, ++idx) {
                const double kz = g.wave[iz];
                acc += (kx2 + ky2 + kz * kz) * std::norm(s.m[idx]);
            }
        }
    }
    return std::sqrt(acc * parseval_constant(g));
}

ScalarField free_propagator(const ScalarField& f, double t) {
    const auto& g = *f.grid;
    ScalarField out(f.grid);
    out.v = f.v;
    fft3(g.n, out.v.data(), true);
    const int n = g.n;
    std::size_t idx = 0;
    for (int ix = 0; ix < n; ++ix) {
        const double kx2 = g.wave[ix] * g.wave[ix];
        for (int iy = 0; iy < n; ++iy) {
            const double ky2 = g.wave[iy] * g.wave[iy];
            for (int iz = 0; iz < n; ++iz, ++idx) {
                const double kz = g.wave[iz];
                const double ph = -(kx2 + ky2 + kz * kz) * t;
                out.v[idx] *= cplx(std::cos(ph), std::sin(ph));
            }
        }
    }
    fft3(n, out.v.data(), false);
    return out;
}

namespace {

// Evaluate the trigonometric interpolant along one axis at y_j = lambda * x_j:
// out[j,...] = (1/n) sum_m E[j][m] in[m,...],   E[j][m] = e^{i k_m (lambda x_j + L/2)}.
void axis_eval(const GridSpec& g, double lambda, int axis, const std::vector<cplx>& in,
               std::vector<cplx>& out) {
    const int n = g.n;
    std::vector<cplx> E(static_cast<std::size_t>(n) * n);
    for (int j = 0; j < n; ++j) {
        const double y = lambda * g.coord[j] + g.L / 2.0;
        for (int m = 0; m < n; ++m) {
            const double ph = g.wave[m] * y;
            E[static_cast<std::size_t>(j) * n + m] = cplx(std::cos(ph), std::sin(ph)) / double(n);
        }
    }
    const std::size_t n2 = static_cast<std::size_t>(n) * n;
    std::fill(out.begin(), out.end(), cplx(0.0));
    if (axis == 0) {
        // out[j, y, z] = sum_m E[j][m] in[m, y, z]
        for (int j = 0; j < n; ++j)
            for (int m = 0; m < n; ++m) {
                const cplx e = E[static_cast<std::size_t>(j) * n + m];
                const cplx* src = &in[m * n2];
                cplx* dst = &out[j * n2];
                for (std::size_t q = 0; q < n2; ++q) dst[q] += e * src[q];
            }
    } else if (axis == 1) {
        for (int x = 0; x < n; ++x)
            for (int j = 0; j < n; ++j)
                for (int m = 0; m < n; ++m) {
                    const cplx e = E[static_cast<std::size_t>(j) * n + m];
                    const cplx* src = &in[x * n2 + static_cast<std::size_t>(m) * n];
                    cplx* dst = &out[x * n2 + static_cast<std::size_t>(j) * n];
                    for (int z = 0; z < n; ++z) dst[z] += e * src[z];
                }
    } else {
        for (std::size_t row = 0; row < n2; ++row) {
            const cplx* src = &in[row * n];
            cplx* dst = &out[row * n];
            for (int j = 0; j < n; ++j) {
                cplx acc = 0.0;
                const cplx* Ej = &E[static_cast<std::size_t>(j) * n];
                for (int m = 0; m < n; ++m) acc += Ej[m] * src[m];
                dst[j] = acc;
            }
        }
    }
}

}  // namespace

ScalarField rescale_field(const ScalarField& f, double lambda) {
    if (!(lambda > 0.0)) throw ConfigError("rescale_field: lambda must be positive");
    const auto& g = *f.grid;
    if (lambda == 1.0) return f;

    ScalarField out(f.grid);
    const int n = g.n;
    const bool integer_lambda = std::abs(lambda - std::round(lambda)) < 1e-14;
    if (integer_lambda) {
        // lambda * x_j lands on the grid: pure index shuffle.
        const long il = static_cast<long>(std::llround(lambda));
        std::vector<int> map(n);
        for (int j = 0; j < n; ++j) {
            long jp = (il * j - (il - 1) * (n / 2)) % n;
            if (jp < 0) jp += n;
            map[j] = static_cast<int>(jp);
        }
        for (int ix = 0; ix < n; ++ix)
            for (int iy = 0; iy < n; ++iy)
                for (int iz = 0; iz < n; ++iz)
                    out.v[g.index(ix, iy, iz)] = f.v[g.index(map[ix], map[iy], map[iz])];
    } else {
        std::vector<cplx> a = f.v;
        fft3(n, a.data(), true);
        std::vector<cplx> b(a.size());
        axis_eval(g, lambda, 0, a, b);
        axis_eval(g, lambda, 1, b, a);
        axis_eval(g, lambda, 2, a, b);
        out.v = std::move(b);
    }

    const double amp = std::sqrt(lambda);
    for (auto& z : out.v) z *= amp;

    if (lambda > 1.0) {
        // Zero the region where lambda*x leaves the fundamental box: the
        // periodic interpolant would otherwise pull in wrapped copies.
        const double cut = g.L / (2.0 * lambda);
        for (int ix = 0; ix < n; ++ix) {
            const bool bx = std::abs(g.coord[ix]) >= cut;
            for (int iy = 0; iy < n; ++iy) {
                const bool by = std::abs(g.coord[iy]) >= cut;
                for (int iz = 0; iz < n; ++iz)
                    if (bx || by || std::abs(g.coord[iz]) >= cut) out.v[g.index(ix, iy, iz)] = 0.0;
            }
        }
    }

    const double tf = tail_fraction(out);
    if (tf > 1e-6)
        throw NumericalError("rescale_field: aliasing guard tripped, spectral tail fraction " +
                             std::to_string(tf) + " beyond 2/3 Nyquist");
    return out;
}

double lp_symbol(double rho) {
    if (rho <= 1.0) return 1.0;
    if (rho >= 1.1) return 0.0;
    const double t = (rho - 1.0) / 0.1;
    const double s = t * t * t * (t * (6.0 * t - 15.0) + 10.0);
    return 1.0 - s;
}

ScalarField littlewood_paley_project(const ScalarField& f, double N, LpKind kind) {
    if (!(N > 0.0)) throw ConfigError("littlewood_paley_project: N must be positive");
    const auto& g = *f.grid;
    ScalarField out(f.grid);
    out.v = f.v;
    fft3(g.n, out.v.data(), true);
    const int n = g.n;
    std::size_t idx = 0;
    for (int ix = 0; ix < n; ++ix) {
        const double kx2 = g.wave[ix] * g.wave[ix];
        for (int iy = 0; iy < n; ++iy) {
            const double ky2 = g.wave[iy] * g.wave[iy];
            for (int iz = 0; iz < n; ++iz, ++idx) {
                const double kz = g.wave[iz];
                const double ak = std::sqrt(kx2 + ky2 + kz * kz);
                double m;
                switch (kind) {
                    case LpKind::LessEqual: m = lp_symbol(ak / N); break;
                    case LpKind::Equal: m = lp_symbol(ak / N) - lp_symbol(2.0 * ak / N); break;
                    default: m = 1.0 - lp_symbol(ak / N); break;
                }
                out.v[idx] *= m;
            }
        }
    }
    fft3(n, out.v.data(), false);
    return out;
}

double tail_fraction(const ScalarField& f, double frac) {
    const auto& g = *f.grid;
    SpectrumField s = to_spectrum(f);
    const double kc = frac * g.kmax();
    const int n = g.n;
    double tail = 0.0, total = 0.0;
    std::size_t idx = 0;
    for (int ix = 0; ix < n; ++ix) {
        const bool bx = std::abs(g.wave[ix]) > kc;
        for (int iy = 0; iy < n; ++iy) {
            const bool by = std::abs(g.wave[iy]) > kc;
            for (int iz = 0; iz < n; ++iz, ++idx) {
                const double e = std::norm(s.m[idx]);
                total += e;
                if (bx || by || std::abs(g.wave[iz]) > kc) tail += e;
            }
        }
    }
    return total > 0.0 ? tail / total : 0.0;
}

ScalarField zeros_like(const ScalarField& f) { return ScalarField(f.grid); }

ScalarField conj(const ScalarField& f) {
    ScalarField out(f.grid);
    for (std::size_t i = 0; i < f.v.size(); ++i) out.v[i] = std::conj(f.v[i]);
    return out;
}

double h1dot_distance(const ScalarField& a, const ScalarField& b) {
    ScalarField d(a.grid);
    for (std::size_t i = 0; i < a.v.size(); ++i) d.v[i] = a.v[i] - b.v[i];
    return sobolev_h1dot(d);
}

}  // namespace ighc
