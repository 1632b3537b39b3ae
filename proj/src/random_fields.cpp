#include "ighc/random_fields.hpp"

#include <cmath>
#include <random>

#include "ighc/fft.hpp"
#include "ighc/spectral.hpp"

namespace ighc {

ScalarField random_smooth_field(const Grid& g, std::uint64_t seed, double k_c, double R) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    ScalarField f(g);
    const int n = g->n;
    std::size_t idx = 0;
    for (int ix = 0; ix < n; ++ix) {
        const double kx2 = g->wave[ix] * g->wave[ix];
        for (int iy = 0; iy < n; ++iy) {
            const double ky2 = g->wave[iy] * g->wave[iy];
            for (int iz = 0; iz < n; ++iz, ++idx) {
                const double kz = g->wave[iz];
                const double k2 = kx2 + ky2 + kz * kz;
                const double env = std::exp(-k2 / (k_c * k_c));
                if (env < 1e-10) continue;
                const double re = gauss(rng), im = gauss(rng);
                f.v[idx] = env * cplx(re, im);
            }
        }
    }
    fft3(n, f.v.data(), false);
    idx = 0;
    for (int ix = 0; ix < n; ++ix) {
        const double x2 = g->coord[ix] * g->coord[ix];
        for (int iy = 0; iy < n; ++iy) {
            const double y2 = g->coord[iy] * g->coord[iy];
            for (int iz = 0; iz < n; ++iz, ++idx) {
                const double z = g->coord[iz];
                f.v[idx] *= std::exp(-(x2 + y2 + z * z) / (R * R));
            }
        }
    }
    const double h1 = sobolev_h1dot(f);
    if (h1 > 0.0)
        for (auto& z : f.v) z /= h1;
    return f;
}

}  // namespace ighc
