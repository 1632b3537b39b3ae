#pragma once

#include <complex>

namespace ighc {

/// In-place 3D complex-to-complex DFT on an n^3 contiguous row-major buffer.
/// Forward: e^{-ikx}, unnormalized. Inverse: applies the 1/n^3.
/// Plans are cached per (n, direction) and reused; creation is mutex-guarded,
/// execution is thread-safe on caller-owned buffers.
void fft3(int n, std::complex<double>* data, bool forward);

/// FFTW threading (no-op when built without fftw3_omp). Call before first use.
void fft_set_threads(int nthreads);
int fft_get_threads();

}  // namespace ighc
