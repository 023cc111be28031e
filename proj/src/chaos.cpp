#include "gmc/chaos.hpp"

#include "gmc/errors.hpp"
#include "gmc/kernels.hpp"

#include <cmath>
#include <numbers>

namespace gmc {

namespace {
constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr int kRotations = 16;
}  // namespace

ChaosMode mode_for_gamma(double gamma)
{
    return std::abs(gamma - kSqrt2) <= 1e-12 ? ChaosMode::critical : ChaosMode::subcritical;
}

ChaosMeasure::ChaosMeasure(GridSpec grid, std::vector<double> weights, double gamma,
                           ChaosMode mode, int truncation_N)
    : grid_(grid), weights_(std::move(weights)), gamma_(gamma), mode_(mode),
      truncation_N_(truncation_N)
{
    if (weights_.size() != grid_.M)
        throw ParameterError("weights must match the grid size");
    prefix_.assign(weights_.size() + 1, 0.0L);
    for (std::size_t j = 0; j < weights_.size(); ++j) {
        if (!(weights_[j] >= 0.0) || !std::isfinite(weights_[j]))
            throw ParameterError("chaos weights must be finite and nonnegative");
        prefix_[j + 1] = prefix_[j] + weights_[j];
    }
    total_ = static_cast<double>(prefix_.back());
    if (!(total_ > 0.0))
        throw ParameterError("chaos measure has zero total mass");
}

double ChaosMeasure::index_range_mass(long lo, long hi) const
{
    // Atoms lo..hi inclusive, indices taken mod M on the circle.
    const long M = static_cast<long>(grid_.M);
    const long count = hi - lo + 1;
    if (count <= 0)
        return 0.0;
    if (grid_.domain == Domain::interval) {
        lo = std::max(lo, 0L);
        hi = std::min(hi, M - 1);
        if (hi < lo)
            return 0.0;
        return static_cast<double>(prefix_[hi + 1] - prefix_[lo]);
    }
    if (count >= M)
        return total_;
    const long a = ((lo % M) + M) % M;
    const long b = a + count;
    if (b <= M)
        return static_cast<double>(prefix_[b] - prefix_[a]);
    return static_cast<double>((prefix_[M] - prefix_[a]) + prefix_[b - M]);
}

double ChaosMeasure::interval_mass(double a, double b) const
{
    if (!(b > a))
        return 0.0;
    const double h = grid_.spacing();
    if (grid_.domain == Domain::circle) {
        if (b - a >= grid_.length() * (1.0 - 1e-14))
            return total_;
        // theta_j = j h in (a, b]  <=>  floor(a/h) < j <= floor(b/h)
        const long lo = static_cast<long>(std::floor(a / h)) + 1;
        const long hi = static_cast<long>(std::floor(b / h));
        return index_range_mass(lo, hi);
    }
    // x_j = -1/2 + (j + 1/2) h in (a, b]
    const double m = static_cast<double>(grid_.M);
    const long lo = static_cast<long>(std::floor(m * (a + 0.5) - 0.5)) + 1;
    const long hi = static_cast<long>(std::floor(m * (b + 0.5) - 0.5));
    return index_range_mass(lo, hi);
}

double ChaosMeasure::average(double theta, double eps) const
{
    if (eps < grid_.spacing() * (1.0 - 1e-12))
        throw ResolutionError("averaging radius below grid spacing");
    return interval_mass(theta - eps, theta + eps) / (2.0 * eps);
}

ChaosMeasure build_measure(const FieldSample& field, double gamma, ChaosMode mode)
{
    if (!(gamma > 0.0) || gamma > kSqrt2 + 1e-12)
        throw ParameterError("gamma must lie in (0, sqrt 2], got " + std::to_string(gamma));
    if (mode != mode_for_gamma(gamma))
        throw ParameterError(mode == ChaosMode::critical
                                 ? "critical mode requires gamma = sqrt 2"
                                 : "subcritical mode requires gamma < sqrt 2");
    const std::size_t M = field.grid.M;
    if (field.values.size() != M || field.variance.size() != M)
        throw ParameterError("field sample is missing values or variances");
    const double h = field.grid.spacing();
    std::vector<double> w(M);
    for (std::size_t j = 0; j < M; ++j) {
        const double s2 = field.variance[j];
        w[j] = std::exp(gamma * field.values[j] - 0.5 * gamma * gamma * s2) * h;
        if (mode == ChaosMode::critical) {
            if (!(s2 > 0.0))
                throw ParameterError("critical normalization needs positive variance");
            w[j] *= std::sqrt(s2);
        }
    }
    return ChaosMeasure(field.grid, std::move(w), gamma, mode, field.truncation_N);
}

std::vector<Estimate> mass_moments_mc(double gamma, double p, const std::vector<double>& eps,
                                      int N, std::size_t replicas, std::uint64_t seed,
                                      int workers, std::vector<std::vector<double>>* samples)
{
    if (replicas < 100)
        throw ParameterError("mass moments need at least 100 replicas");
    if (p >= 2.0 / (gamma * gamma))
        throw ParameterError("moment of order p >= 2/gamma^2 does not exist");
    if (N < 1)
        throw ParameterError("truncation must be >= 1");
    const GridSpec grid = GridSpec::circle(4 * static_cast<std::size_t>(N));
    const ChaosMode mode = mode_for_gamma(gamma);

    auto per_replica = kernels::parallel::replica_map(replicas, workers, [&](std::size_t r) {
        Rng rng(derive_seed(seed, stream::mass_moment, r));
        const ChaosMeasure mu = build_measure(sample_canonical(N, grid, rng), gamma, mode);
        std::vector<double> out(eps.size());
        for (std::size_t i = 0; i < eps.size(); ++i) {
            double acc = 0.0;
            for (int k = 0; k < kRotations; ++k) {
                const double c = 2.0 * std::numbers::pi * k / kRotations;
                acc += std::pow(mu.interval_mass(c - eps[i], c + eps[i]), p);
            }
            out[i] = acc / kRotations;
        }
        return out;
    });

    std::vector<Estimate> est(eps.size());
    if (samples)
        samples->assign(eps.size(), std::vector<double>(replicas));
    for (std::size_t i = 0; i < eps.size(); ++i) {
        std::vector<double> col(replicas);
        for (std::size_t r = 0; r < replicas; ++r)
            col[r] = per_replica[r][i];
        est[i] = mean_estimate(col);
        if (samples)
            (*samples)[i] = std::move(col);
    }
    return est;
}

Estimate mass_moment_mc(double gamma, double p, double eps, int N, std::size_t replicas,
                        std::uint64_t seed, int workers)
{
    if (p == 0.0 && replicas >= 100 && N >= 1)
        return {1.0, 0.0, replicas};
    return mass_moments_mc(gamma, p, {eps}, N, replicas, seed, workers).front();
}

}  // namespace gmc
