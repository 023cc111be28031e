#pragma once

#include "gmc/field.hpp"
#include "gmc/stats.hpp"

#include <cstdint>
#include <vector>

namespace gmc {

enum class ChaosMode { subcritical, critical };

// Picks critical for gamma = sqrt(2) (within 1e-12), subcritical otherwise.
ChaosMode mode_for_gamma(double gamma);

// Atomic chaos measure: weight_j sits at grid point j. Not normalized, so the
// expected total mass is the domain length.
class ChaosMeasure {
public:
    ChaosMeasure(GridSpec grid, std::vector<double> weights, double gamma, ChaosMode mode,
                 int truncation_N);

    const GridSpec& grid() const { return grid_; }
    const std::vector<double>& weights() const { return weights_; }
    double gamma() const { return gamma_; }
    ChaosMode mode() const { return mode_; }
    int truncation_N() const { return truncation_N_; }
    double total_mass() const { return total_; }
    double position(std::size_t j) const { return grid_.point(j); }

    // Sum of weights at points in (a, b]; on the circle angles are taken
    // mod 2 pi and b - a >= 2 pi means the whole circle.
    double interval_mass(double a, double b) const;
    // interval_mass(theta - eps, theta + eps) / (2 eps).
    double average(double theta, double eps) const;

private:
    double index_range_mass(long lo, long hi) const;

    GridSpec grid_;
    std::vector<double> weights_;
    std::vector<long double> prefix_;
    double gamma_;
    ChaosMode mode_;
    int truncation_N_;
    double total_;
};

ChaosMeasure build_measure(const FieldSample& field, double gamma, ChaosMode mode);
inline ChaosMeasure build_measure(const FieldSample& field, double gamma)
{
    return build_measure(field, gamma, mode_for_gamma(gamma));
}

// E[mu([-eps, eps])^p] for the canonical field at truncation N on M = 4N
// points. Each replica averages over 16 rotations of the arc.
Estimate mass_moment_mc(double gamma, double p, double eps, int N, std::size_t replicas,
                        std::uint64_t seed, int workers = 0);

// Same, for several radii on shared replicas. samples[i][r] receives the
// per-replica values when non-null.
std::vector<Estimate> mass_moments_mc(double gamma, double p, const std::vector<double>& eps,
                                      int N, std::size_t replicas, std::uint64_t seed,
                                      int workers = 0,
                                      std::vector<std::vector<double>>* samples = nullptr);

}  // namespace gmc
