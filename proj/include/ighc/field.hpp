#pragma once

#include <complex>
#include <vector>

#include "ighc/grid.hpp"

namespace ighc {

using cplx = std::complex<double>;

/// Complex samples on a GridSpec, row-major with z fastest.
/// Fields are immutable values in spirit: every operation returns a new field.
struct ScalarField {
    Grid grid;
    std::vector<cplx> v;

    ScalarField() = default;
    explicit ScalarField(Grid g) : grid(std::move(g)), v(grid->points()) {}
    ScalarField(Grid g, std::vector<cplx> data) : grid(std::move(g)), v(std::move(data)) {}

    std::size_t size() const { return v.size(); }
    cplx& operator[](std::size_t i) { return v[i]; }
    const cplx& operator[](std::size_t i) const { return v[i]; }
};

/// Fourier coefficients in FFT storage order (mode m at storage index
/// m mod n per axis). Forward transform uses e^{-i k x}; the inverse
/// carries the 1/n^3.
struct SpectrumField {
    Grid grid;
    std::vector<cplx> m;

    SpectrumField() = default;
    explicit SpectrumField(Grid g) : grid(std::move(g)), m(grid->points()) {}
};

/// Throws ighc::NumericalError if the field contains NaN or Inf.
void require_finite(const ScalarField& f, const char* what);
bool all_finite(const ScalarField& f);

}  // namespace ighc
