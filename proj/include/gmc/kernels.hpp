#pragma once

// Hot loops in two flavours. `serial` is the plain reference used by tests;
// `parallel` is what the library calls (FFT synthesis, OpenMP over points and
// replicas). Both produce results that do not depend on the thread count.

#include <complex>
#include <cstddef>
#include <exception>
#include <type_traits>
#include <vector>

#include <omp.h>

namespace gmc {

// Atoms in structure-of-arrays form: e^{i theta_k} = (c_k, s_k), mass m_k.
struct AtomSet {
    std::vector<double> c, s, m;

    static AtomSet from_angles(const std::vector<double>& theta, const std::vector<double>& mass);
    std::size_t size() const { return m.size(); }
};

struct HerglotzValue {
    std::complex<double> h;
    std::complex<double> dh;
};

namespace kernels {

namespace serial {

// out[j] = sum_n a[n-1] cos(n t_j) + b[n-1] sin(n t_j), t_j = 2 pi j / M.
void synthesize_trig(const std::vector<double>& a, const std::vector<double>& b, std::size_t M,
                     double* out);

std::complex<double> herglotz(const AtomSet& atoms, std::complex<double> z);
HerglotzValue herglotz_with_derivative(const AtomSet& atoms, std::complex<double> z);
void herglotz_batch(const AtomSet& atoms, const std::complex<double>* z, std::size_t n,
                    HerglotzValue* out);

template <class F>
auto replica_map(std::size_t n, F&& f) -> std::vector<std::invoke_result_t<F&, std::size_t>>
{
    std::vector<std::invoke_result_t<F&, std::size_t>> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = f(i);
    return out;
}

}  // namespace serial

namespace parallel {

void synthesize_trig(const std::vector<double>& a, const std::vector<double>& b, std::size_t M,
                     double* out);

std::complex<double> herglotz(const AtomSet& atoms, std::complex<double> z);
HerglotzValue herglotz_with_derivative(const AtomSet& atoms, std::complex<double> z);
void herglotz_batch(const AtomSet& atoms, const std::complex<double>* z, std::size_t n,
                    HerglotzValue* out, int workers = 0);

// Results land in slot i regardless of which thread ran replica i. If several
// replicas throw, the exception of the lowest index is rethrown.
template <class F>
auto replica_map(std::size_t n, int workers, F&& f)
    -> std::vector<std::invoke_result_t<F&, std::size_t>>
{
    std::vector<std::invoke_result_t<F&, std::size_t>> out(n);
    std::vector<std::exception_ptr> errors(n);
    const int threads = workers > 0 ? workers : omp_get_max_threads();
    const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (long i = 0; i < count; ++i) {
        try {
            out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    return out;
}

}  // namespace parallel

}  // namespace kernels
}  // namespace gmc
