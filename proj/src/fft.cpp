#include "ighc/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace ighc {

namespace {

std::mutex plan_mutex;
std::map<std::pair<int, bool>, fftw_plan> plan_cache;
int fft_threads = 1;

fftw_plan get_plan(int n, bool forward) {
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto key = std::make_pair(n, forward);
    auto it = plan_cache.find(key);
    if (it != plan_cache.end()) return it->second;
#ifdef IGHC_HAVE_FFTW_OMP
    static bool threads_ready = [] {
        fftw_init_threads();
        return true;
    }();
    (void)threads_ready;
    fftw_plan_with_nthreads(fft_threads);
#endif
    // Planned once on a scratch buffer with FFTW_UNALIGNED so the plan can be
    // executed on any caller buffer via fftw_execute_dft.
    fftw_complex* scratch = fftw_alloc_complex(static_cast<std::size_t>(n) * n * n);
    fftw_plan p = fftw_plan_dft_3d(n, n, n, scratch, scratch,
                                   forward ? FFTW_FORWARD : FFTW_BACKWARD,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(scratch);
    plan_cache[key] = p;
    return p;
}

}  // namespace

void fft3(int n, std::complex<double>* data, bool forward) {
    fftw_plan p = get_plan(n, forward);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(data),
                     reinterpret_cast<fftw_complex*>(data));
    if (!forward) {
        const double s = 1.0 / (static_cast<double>(n) * n * n);
        const std::size_t m = static_cast<std::size_t>(n) * n * n;
        for (std::size_t i = 0; i < m; ++i) data[i] *= s;
    }
}

void fft_set_threads(int nthreads) {
    std::lock_guard<std::mutex> lock(plan_mutex);
    if (nthreads < 1) nthreads = 1;
    if (nthreads == fft_threads) return;
    fft_threads = nthreads;
    for (auto& [key, plan] : plan_cache) fftw_destroy_plan(plan);
    plan_cache.clear();
}

int fft_get_threads() { return fft_threads; }

}  // namespace ighc
