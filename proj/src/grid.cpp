#include "ighc/grid.hpp"

#include <cmath>

#include "ighc/errors.hpp"

namespace ighc {

double GridSpec::kmax() const { return M_PI * n / L; }

Grid make_grid(int n, double L) {
    if (n < 8) throw ConfigError("grid: n must be >= 8, got " + std::to_string(n));
    if ((n & (n - 1)) != 0) throw ConfigError("grid: n must be a power of two, got " + std::to_string(n));
    if (!(L > 0.0)) throw ConfigError("grid: L must be positive");

    auto g = std::make_shared<GridSpec>();
    g->n = n;
    g->L = L;
    g->h = L / n;
    g->coord.resize(n);
    g->wave.resize(n);
    g->wave_deriv.resize(n);
    for (int i = 0; i < n; ++i) {
        g->coord[i] = -L / 2 + i * g->h;
        int m = (i <= n / 2 - 1) ? i : i - n;  // i = n/2 maps to -n/2 (Nyquist)
        g->wave[i] = 2.0 * M_PI * m / L;
        g->wave_deriv[i] = (i == n / 2) ? 0.0 : g->wave[i];
    }
    return g;
}

}  // namespace ighc
