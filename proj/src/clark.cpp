#include "gmc/clark.hpp"

#include "gmc/errors.hpp"

#include <cmath>
#include <limits>

namespace gmc {

double AnalyticSelfMap::log_abs(cplx z) const { return std::log(std::abs(value(z))); }

void check_disc_point(cplx z)
{
    if (!(std::abs(z) <= kEvalGuard))
        throw ParameterError("evaluation point outside |z| <= 1 - 1e-12");
}

InnerFunctionEval::InnerFunctionEval(const ChaosMeasure& mu)
{
    if (mu.grid().domain != Domain::circle)
        throw ParameterError("Clark evaluation needs a measure on the circle");
    std::vector<double> theta(mu.grid().M);
    for (std::size_t j = 0; j < theta.size(); ++j)
        theta[j] = mu.position(j);
    atoms_ = AtomSet::from_angles(theta, mu.weights());
    total_ = mu.total_mass();
    resolution_ = mu.grid().spacing();
}

InnerFunctionEval::InnerFunctionEval(std::vector<double> theta, std::vector<double> mass)
{
    if (theta.size() != mass.size() || theta.empty())
        throw ParameterError("atom list needs matching, nonempty angle and mass arrays");
    for (double m : mass)
        if (!(m >= 0.0) || !std::isfinite(m))
            throw ParameterError("atom masses must be finite and nonnegative");
    atoms_ = AtomSet::from_angles(theta, mass);
    for (double m : mass)
        total_ += m;
    if (!(total_ > 0.0))
        throw ParameterError("atom list has zero total mass");
}

cplx InnerFunctionEval::herglotz(cplx z) const
{
    check_disc_point(z);
    return kernels::parallel::herglotz(atoms_, z);
}

cplx InnerFunctionEval::herglotz_derivative(cplx z) const
{
    check_disc_point(z);
    return kernels::parallel::herglotz_with_derivative(atoms_, z).dh;
}

cplx InnerFunctionEval::phi(cplx z) const
{
    const cplx h = herglotz(z);
    return (h - 1.0) / (h + 1.0);
}

std::pair<cplx, cplx> InnerFunctionEval::value_and_derivative(cplx z) const
{
    check_disc_point(z);
    const HerglotzValue v = kernels::parallel::herglotz_with_derivative(atoms_, z);
    const cplx hp1 = v.h + 1.0;
    return {(v.h - 1.0) / hp1, 2.0 * v.dh / (hp1 * hp1)};
}

cplx InnerFunctionEval::phi_derivative(cplx z) const { return value_and_derivative(z).second; }

double InnerFunctionEval::poisson_x(cplx z) const
{
    check_disc_point(z);
    const double one_minus = 1.0 - std::norm(z);
    double x = 0.0;
    for (std::size_t k = 0; k < atoms_.size(); ++k) {
        const double dx = z.real() - atoms_.c[k], dy = z.imag() - atoms_.s[k];
        x += atoms_.m[k] * one_minus / (dx * dx + dy * dy);
    }
    return x;
}

double InnerFunctionEval::conj_poisson_y(cplx z) const
{
    check_disc_point(z);
    // |z| sin(theta_k - arg z) = s_k Re z - c_k Im z
    double y = 0.0;
    for (std::size_t k = 0; k < atoms_.size(); ++k) {
        const double dx = z.real() - atoms_.c[k], dy = z.imag() - atoms_.s[k];
        const double sn = atoms_.s[k] * z.real() - atoms_.c[k] * z.imag();
        y += atoms_.m[k] * (-2.0 * sn) / (dx * dx + dy * dy);
    }
    return y;
}

double InnerFunctionEval::log_abs_phi(cplx z) const
{
    const cplx h = herglotz(z);
    const double x = h.real(), y = h.imag();
    const double den = (x - 1.0) * (x - 1.0) + y * y;
    if (den == 0.0)
        return -std::numeric_limits<double>::infinity();
    return -0.5 * std::log1p(4.0 * x / den);
}

std::vector<HerglotzValue> InnerFunctionEval::herglotz_batch(const std::vector<cplx>& z,
                                                             int workers) const
{
    for (const cplx& p : z)
        check_disc_point(p);
    std::vector<HerglotzValue> out(z.size());
    kernels::parallel::herglotz_batch(atoms_, z.data(), z.size(), out.data(), workers);
    return out;
}

}  // namespace gmc
