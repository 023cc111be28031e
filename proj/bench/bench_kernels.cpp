// Times the serial reference kernels against the FFT/OpenMP ones.
#include "gmc/field.hpp"
#include "gmc/kernels.hpp"
#include "gmc/rng.hpp"

#include <chrono>
#ifdef _OPENMP
#include <omp.h>
#endif
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <vector>

using namespace gmc;

namespace {

template <class F>
double seconds(F&& f, int reps)
{
    const auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i)
        f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / reps;
}

// Synthesis compares the direct O(NM) sum with the FFT; the other rows
// compare one thread with the OpenMP team.
void report(const char* what, double serial, double parallel)
{
    std::printf("%-28s reference %10.3f ms   fast %10.3f ms   speedup %7.1fx\n", what,
                1e3 * serial, 1e3 * parallel, serial / parallel);
}

}  // namespace

int main()
{
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#endif
    Rng rng(7);
    for (int N : {256, 1024, 4096}) {
        const std::size_t M = 4 * static_cast<std::size_t>(N);
        std::vector<double> a(N), b(N), out(M);
        for (int n = 0; n < N; ++n) {
            a[n] = rng.normal() / std::sqrt(n + 1.0);
            b[n] = rng.normal() / std::sqrt(n + 1.0);
        }
        const int reps = N >= 4096 ? 2 : 10;
        const double s = seconds([&] { kernels::serial::synthesize_trig(a, b, M, out.data()); }, reps);
        const double p = seconds([&] { kernels::parallel::synthesize_trig(a, b, M, out.data()); }, 50);
        char label[64];
        std::snprintf(label, sizeof label, "synthesis N=%d", N);
        report(label, s, p);
    }

    const std::size_t atoms = 16384, points = 2048;
    std::vector<double> theta(atoms), mass(atoms);
    for (std::size_t j = 0; j < atoms; ++j) {
        theta[j] = 2.0 * std::numbers::pi * j / atoms;
        mass[j] = std::exp(0.3 * rng.normal()) / atoms;
    }
    const AtomSet set = AtomSet::from_angles(theta, mass);
    std::vector<std::complex<double>> z(points);
    for (auto& w : z)
        w = std::polar(0.99 * std::sqrt(rng.uniform()), 2.0 * std::numbers::pi * rng.uniform());
    std::vector<HerglotzValue> hv(points);
    report("herglotz batch 16384x2048",
           seconds([&] { kernels::serial::herglotz_batch(set, z.data(), points, hv.data()); }, 2),
           seconds([&] { kernels::parallel::herglotz_batch(set, z.data(), points, hv.data()); }, 5));

    auto replica = [](std::size_t r) {
        Rng g(derive_seed(1, stream::field, r));
        return sample_canonical(1024, GridSpec::circle(4096), g).values[0];
    };
    report("replica map 256 fields",
           seconds([&] { kernels::serial::replica_map(256, replica); }, 2),
           seconds([&] { kernels::parallel::replica_map(256, 0, replica); }, 2));
    return 0;
}
