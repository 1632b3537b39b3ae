#pragma once

#include <cstddef>
#include <memory>
#include <vector>

namespace ighc {

/// Periodic cubic grid: n points per axis (power of two), box side L,
/// x_i = -L/2 + i*h with h = L/n. Index n/2 sits exactly at the origin.
/// Angular wavenumbers k_m = 2*pi*m/L with integer frequency m in [-n/2, n/2).
struct GridSpec {
    int n = 0;
    double L = 0.0;
    double h = 0.0;
    std::vector<double> coord;       // x_i per axis
    std::vector<double> wave;        // k_m per axis, FFT storage order
    std::vector<double> wave_deriv;  // k_m with the Nyquist mode zeroed (gradient multiplier)

    std::size_t points() const { return static_cast<std::size_t>(n) * n * n; }
    // Row-major with the last axis fastest; fixed so checkpoints are bit-portable.
    std::size_t index(int ix, int iy, int iz) const {
        return (static_cast<std::size_t>(ix) * n + iy) * n + iz;
    }
    double kmax() const;  // Nyquist angular wavenumber pi*n/L
};

using Grid = std::shared_ptr<const GridSpec>;

/// Build a grid. Rejects n that is not a power of two or < 8, and L <= 0.
Grid make_grid(int n, double L);

}  // namespace ighc
