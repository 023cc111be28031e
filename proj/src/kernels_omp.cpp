#include "gmc/kernels.hpp"

#include "gmc/errors.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace gmc::kernels::parallel {

namespace {

// FFTW planning is not thread-safe; execution with new-array execute is.
std::mutex plan_mutex;
std::map<std::size_t, fftw_plan>& plan_cache()
{
    static std::map<std::size_t, fftw_plan> cache;
    return cache;
}

fftw_plan c2r_plan(std::size_t M)
{
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto& cache = plan_cache();
    auto it = cache.find(M);
    if (it != cache.end())
        return it->second;
    auto* in = fftw_alloc_complex(M / 2 + 1);
    auto* out = fftw_alloc_real(M);
    fftw_plan p = fftw_plan_dft_c2r_1d(static_cast<int>(M), in, out, FFTW_ESTIMATE);
    fftw_free(in);
    fftw_free(out);
    cache.emplace(M, p);
    return p;
}

struct FftwFree {
    void operator()(void* p) const { fftw_free(p); }
};

}  // namespace

void synthesize_trig(const std::vector<double>& a, const std::vector<double>& b, std::size_t M,
                     double* out)
{
    const std::size_t N = a.size();
    if (2 * N > M)
        throw AliasingError("synthesis needs N <= M/2");
    std::unique_ptr<fftw_complex[], FftwFree> spec(fftw_alloc_complex(M / 2 + 1));
    std::unique_ptr<double[], FftwFree> buf(fftw_alloc_real(M));
    for (std::size_t k = 0; k <= M / 2; ++k)
        spec[k][0] = spec[k][1] = 0.0;
    // c2r computes x_j = sum_k X_k e^{2 pi i jk/M} over the Hermitian extension,
    // so a cos + b sin at frequency n < M/2 needs X_n = (a - i b)/2.
    for (std::size_t n = 1; n <= N; ++n) {
        if (2 * n == M) {
            spec[n][0] = a[n - 1];  // sin(pi j) vanishes on the grid
        } else {
            spec[n][0] = 0.5 * a[n - 1];
            spec[n][1] = -0.5 * b[n - 1];
        }
    }
    fftw_execute_dft_c2r(c2r_plan(M), spec.get(), buf.get());
    for (std::size_t j = 0; j < M; ++j)
        out[j] = buf[j];
}

std::complex<double> herglotz(const AtomSet& atoms, std::complex<double> z)
{
    const double zr = z.real(), zi = z.imag();
    const double* c = atoms.c.data();
    const double* s = atoms.s.data();
    const double* m = atoms.m.data();
    const long n = static_cast<long>(atoms.size());
    double re = 0.0, im = 0.0;
#pragma omp simd reduction(+ : re, im)
    for (long k = 0; k < n; ++k) {
        const double dx = c[k] - zr, dy = s[k] - zi;
        const double px = c[k] + zr, py = s[k] + zi;
        const double w = m[k] / (dx * dx + dy * dy);
        re += w * (px * dx + py * dy);
        im += w * (py * dx - px * dy);
    }
    return {re, im};
}

HerglotzValue herglotz_with_derivative(const AtomSet& atoms, std::complex<double> z)
{
    const double zr = z.real(), zi = z.imag();
    const double* c = atoms.c.data();
    const double* s = atoms.s.data();
    const double* m = atoms.m.data();
    const long n = static_cast<long>(atoms.size());
    double re = 0.0, im = 0.0, dre = 0.0, dim = 0.0;
#pragma omp simd reduction(+ : re, im, dre, dim)
    for (long k = 0; k < n; ++k) {
        const double dx = c[k] - zr, dy = s[k] - zi;
        const double px = c[k] + zr, py = s[k] + zi;
        const double inv = 1.0 / (dx * dx + dy * dy);
        const double w = m[k] * inv;
        re += w * (px * dx + py * dy);
        im += w * (py * dx - px * dy);
        const double qr = dx * dx - dy * dy, qi = -2.0 * dx * dy;
        const double w2 = 2.0 * w * inv;
        dre += w2 * (c[k] * qr - s[k] * qi);
        dim += w2 * (c[k] * qi + s[k] * qr);
    }
    return {{re, im}, {dre, dim}};
}

void herglotz_batch(const AtomSet& atoms, const std::complex<double>* z, std::size_t n,
                    HerglotzValue* out, int workers)
{
    const int threads = workers > 0 ? workers : omp_get_max_threads();
    const long count = static_cast<long>(n);
#pragma omp parallel for schedule(static) num_threads(threads)
    for (long i = 0; i < count; ++i)
        out[i] = herglotz_with_derivative(atoms, z[i]);
}

}  // namespace gmc::kernels::parallel
