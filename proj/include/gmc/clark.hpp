#pragma once

#include "gmc/chaos.hpp"
#include "gmc/kernels.hpp"

#include <complex>
#include <utility>
#include <vector>

namespace gmc {

using cplx = std::complex<double>;

// Points with |z| above this are refused by the evaluators.
inline constexpr double kEvalGuard = 1.0 - 1e-12;

// Analytic map of the disc as seen by the zero finder.
class AnalyticSelfMap {
public:
    virtual ~AnalyticSelfMap() = default;
    virtual cplx value(cplx z) const = 0;
    virtual std::pair<cplx, cplx> value_and_derivative(cplx z) const = 0;
    virtual double log_abs(cplx z) const;
    // Angular spacing of the underlying atoms, 0 for exact objects.
    virtual double angular_resolution() const { return 0.0; }
};

// phi = (h - 1)/(h + 1) for the Herglotz transform h of an atomic measure.
class InnerFunctionEval : public AnalyticSelfMap {
public:
    explicit InnerFunctionEval(const ChaosMeasure& mu);
    InnerFunctionEval(std::vector<double> theta, std::vector<double> mass);

    double total_mass() const { return total_; }
    const AtomSet& atoms() const { return atoms_; }

    cplx herglotz(cplx z) const;
    cplx herglotz_derivative(cplx z) const;
    cplx phi(cplx z) const;
    cplx phi_derivative(cplx z) const;
    double poisson_x(cplx z) const;
    double conj_poisson_y(cplx z) const;
    // -1/2 log(1 + 4x/((x-1)^2 + y^2)); -infinity at an exact zero.
    double log_abs_phi(cplx z) const;

    cplx value(cplx z) const override { return phi(z); }
    std::pair<cplx, cplx> value_and_derivative(cplx z) const override;
    double log_abs(cplx z) const override { return log_abs_phi(z); }
    double angular_resolution() const override { return resolution_; }

    // h and h' at many points (OpenMP over points).
    std::vector<HerglotzValue> herglotz_batch(const std::vector<cplx>& z, int workers = 0) const;

private:
    AtomSet atoms_;
    double total_ = 0.0;
    double resolution_ = 0.0;
};

void check_disc_point(cplx z);

}  // namespace gmc
