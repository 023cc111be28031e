#include "gmc/kernels.hpp"

#include <cmath>
#include <numbers>

namespace gmc {

AtomSet AtomSet::from_angles(const std::vector<double>& theta, const std::vector<double>& mass)
{
    AtomSet a;
    a.c.resize(theta.size());
    a.s.resize(theta.size());
    a.m = mass;
    for (std::size_t k = 0; k < theta.size(); ++k) {
        a.c[k] = std::cos(theta[k]);
        a.s[k] = std::sin(theta[k]);
    }
    return a;
}

namespace kernels::serial {

void synthesize_trig(const std::vector<double>& a, const std::vector<double>& b, std::size_t M,
                     double* out)
{
    const double step = 2.0 * std::numbers::pi / static_cast<double>(M);
    for (std::size_t j = 0; j < M; ++j) {
        double sum = 0.0;
        for (std::size_t n = 1; n <= a.size(); ++n) {
            // Reduce n*j mod M first so the angle stays small and exact.
            const double t = step * static_cast<double>((n * j) % M);
            sum += a[n - 1] * std::cos(t) + b[n - 1] * std::sin(t);
        }
        out[j] = sum;
    }
}

std::complex<double> herglotz(const AtomSet& atoms, std::complex<double> z)
{
    const double zr = z.real(), zi = z.imag();
    double re = 0.0, im = 0.0;
    for (std::size_t k = 0; k < atoms.size(); ++k) {
        const double dx = atoms.c[k] - zr, dy = atoms.s[k] - zi;
        const double px = atoms.c[k] + zr, py = atoms.s[k] + zi;
        const double w = atoms.m[k] / (dx * dx + dy * dy);
        re += w * (px * dx + py * dy);
        im += w * (py * dx - px * dy);
    }
    return {re, im};
}

HerglotzValue herglotz_with_derivative(const AtomSet& atoms, std::complex<double> z)
{
    const double zr = z.real(), zi = z.imag();
    double re = 0.0, im = 0.0, dre = 0.0, dim = 0.0;
    for (std::size_t k = 0; k < atoms.size(); ++k) {
        const double c = atoms.c[k], s = atoms.s[k];
        const double dx = c - zr, dy = s - zi;
        const double px = c + zr, py = s + zi;
        const double inv = 1.0 / (dx * dx + dy * dy);
        const double w = atoms.m[k] * inv;
        re += w * (px * dx + py * dy);
        im += w * (py * dx - px * dy);
        // 2 m e conj(e - z)^2 / |e - z|^4
        const double qr = dx * dx - dy * dy, qi = -2.0 * dx * dy;
        const double w2 = 2.0 * w * inv;
        dre += w2 * (c * qr - s * qi);
        dim += w2 * (c * qi + s * qr);
    }
    return {{re, im}, {dre, dim}};
}

void herglotz_batch(const AtomSet& atoms, const std::complex<double>* z, std::size_t n,
                    HerglotzValue* out)
{
    for (std::size_t i = 0; i < n; ++i)
        out[i] = herglotz_with_derivative(atoms, z[i]);
}

}  // namespace kernels::serial
}  // namespace gmc
