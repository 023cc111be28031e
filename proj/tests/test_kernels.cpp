#include "gmc/kernels.hpp"
#include "gmc/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

using namespace gmc;

namespace {

AtomSet random_atoms(std::size_t n, Rng& rng)
{
    std::vector<double> t(n), m(n);
    for (std::size_t j = 0; j < n; ++j) {
        t[j] = 2.0 * std::numbers::pi * rng.uniform();
        m[j] = rng.uniform();
    }
    return AtomSet::from_angles(t, m);
}

}  // namespace

TEST_CASE("FFT synthesis matches the direct sum")
{
    Rng rng(11);
    for (std::size_t N : {1u, 7u, 64u, 512u}) {
        const std::size_t M = 4 * std::max<std::size_t>(N, 2);
        std::vector<double> a(N), b(N);
        for (std::size_t n = 0; n < N; ++n) {
            a[n] = rng.normal();
            b[n] = rng.normal();
        }
        std::vector<double> s(M), p(M);
        kernels::serial::synthesize_trig(a, b, M, s.data());
        kernels::parallel::synthesize_trig(a, b, M, p.data());
        for (std::size_t j = 0; j < M; ++j)
            CHECK(std::abs(s[j] - p[j]) < 1e-10 * std::sqrt(static_cast<double>(N)));
    }
}

TEST_CASE("synthesis at the Nyquist mode")
{
    const std::size_t M = 16;
    std::vector<double> a(8, 0.0), b(8, 0.0);
    a[7] = 1.0;  // cos(8 t_j) = (-1)^j
    b[7] = 5.0;  // sin(8 t_j) = 0 on the grid
    std::vector<double> p(M);
    kernels::parallel::synthesize_trig(a, b, M, p.data());
    for (std::size_t j = 0; j < M; ++j)
        CHECK(p[j] == doctest::Approx(j % 2 ? -1.0 : 1.0).epsilon(1e-12));
}

TEST_CASE("Herglotz sums agree between serial and parallel kernels")
{
    Rng rng(5);
    const AtomSet atoms = random_atoms(1000, rng);
    std::vector<std::complex<double>> z(64);
    for (auto& w : z)
        w = std::polar(0.999 * std::sqrt(rng.uniform()), 2.0 * std::numbers::pi * rng.uniform());
    std::vector<HerglotzValue> s(z.size()), p(z.size());
    kernels::serial::herglotz_batch(atoms, z.data(), z.size(), s.data());
    kernels::parallel::herglotz_batch(atoms, z.data(), z.size(), p.data(), 3);
    for (std::size_t i = 0; i < z.size(); ++i) {
        CHECK(std::abs(s[i].h - p[i].h) < 1e-10 * std::abs(s[i].h));
        CHECK(std::abs(s[i].dh - p[i].dh) < 1e-10 * std::abs(s[i].dh));
        CHECK(std::abs(kernels::parallel::herglotz(atoms, z[i]) - s[i].h) < 1e-10 * std::abs(s[i].h));
    }
}

TEST_CASE("Herglotz derivative matches a finite difference")
{
    Rng rng(9);
    const AtomSet atoms = random_atoms(50, rng);
    const std::complex<double> z(0.3, -0.4), dz(1e-6, 0.0);
    const auto v = kernels::serial::herglotz_with_derivative(atoms, z);
    const auto fd = (kernels::serial::herglotz(atoms, z + dz) - kernels::serial::herglotz(atoms, z - dz)) /
                    (2.0 * dz);
    CHECK(std::abs(v.dh - fd) < 1e-6 * std::abs(v.dh));
}

TEST_CASE("replica_map is independent of the worker count")
{
    auto f = [](std::size_t i) {
        Rng rng(derive_seed(42, 1, i));
        double s = 0.0;
        for (int k = 0; k < 100; ++k)
            s += rng.normal();
        return s;
    };
    const auto ref = kernels::serial::replica_map(200, f);
    for (int w : {1, 2, 3, 8})
        CHECK(kernels::parallel::replica_map(200, w, f) == ref);
}

TEST_CASE("replica_map rethrows the lowest failing index")
{
    auto f = [](std::size_t i) -> int {
        if (i == 17 || i == 90)
            throw std::runtime_error(std::to_string(i));
        return static_cast<int>(i);
    };
    try {
        kernels::parallel::replica_map(100, 4, f);
        FAIL("expected an exception");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()) == "17");
    }
}

TEST_CASE("derive_seed separates streams and indices")
{
    CHECK(derive_seed(1, 1, 0) != derive_seed(1, 1, 1));
    CHECK(derive_seed(1, 1, 0) != derive_seed(1, 2, 0));
    CHECK(derive_seed(1, 1, 0) != derive_seed(2, 1, 0));
    CHECK(derive_seed(7, 3, 5) == derive_seed(7, 3, 5));
}
