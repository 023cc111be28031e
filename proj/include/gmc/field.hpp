#pragma once

#include "gmc/grid.hpp"
#include "gmc/rng.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gmc {

enum class KernelKind { canonical, perturbed, exact_scaling, residual };

std::string to_string(KernelKind kind);
KernelKind kernel_kind_from_string(const std::string& s);

// Covariance kernel. For `perturbed`, g holds the coefficients of
// g(t, t') = sum_ab g(a, b) e_a(t) e_b(t') in the trig basis of trig.hpp.
struct KernelSpec {
    KernelKind kind = KernelKind::canonical;
    Eigen::MatrixXd g;

    static KernelSpec canonical() { return {}; }
    static KernelSpec perturbed(Eigen::MatrixXd g);
    static KernelSpec exact_scaling() { return {KernelKind::exact_scaling, {}}; }

    double g_value(double t1, double t2) const;
};

struct FieldSample {
    GridSpec grid;
    std::vector<double> values;
    int truncation_N = 0;
    // Exact E[X(t_j)^2] for the sampled law, per grid point.
    std::vector<double> variance;
    KernelKind kernel = KernelKind::canonical;
    // Standard Gaussian coefficients A_n (cos) and B_n (sin), n = 1..N; only
    // kept for the canonical kernel and its residuals.
    std::vector<double> cos_coeffs, sin_coeffs;

    double variance_sigma2() const { return variance.empty() ? 0.0 : variance.front(); }
};

// sum_{n<=N} cos(n delta)/n, or -log|e^{i delta} - 1| when N is empty.
double covariance_canonical(double delta, std::optional<int> N = std::nullopt);

double harmonic_number(int N);

// Draws A_1, B_1, A_2, B_2, ... in that order.
struct CanonicalCoefficients {
    std::vector<double> A, B;
    static CanonicalCoefficients draw(int N, Rng& rng);
};

// Synthesizes the canonical field from the first N coefficients of `c`
// (which may hold more, for coupled truncation schedules).
FieldSample synthesize_canonical(const CanonicalCoefficients& c, int N, const GridSpec& grid);

FieldSample sample_canonical(int N, const GridSpec& grid, Rng& rng);

// Gaussian vector with a given covariance, via symmetric eigendecomposition.
// Eigenvalues below zero are clipped. With `strict`, an eigenvalue below
// -1e-8 * (largest eigenvalue) is an InvalidKernelError.
class CovarianceSampler {
public:
    CovarianceSampler(const Eigen::MatrixXd& K, bool strict);

    std::vector<double> draw(Rng& rng) const;
    // Diagonal of the clipped covariance, i.e. the exact variance of draw().
    const std::vector<double>& variance() const { return variance_; }
    double min_eigenvalue() const { return min_eig_; }
    double max_eigenvalue() const { return max_eig_; }
    const Eigen::MatrixXd& factor() const { return factor_; }

private:
    Eigen::MatrixXd factor_;
    std::vector<double> variance_;
    double min_eig_ = 0.0, max_eig_ = 0.0;
};

Eigen::MatrixXd canonical_grid_covariance(int N, const GridSpec& grid);

class PerturbedSampler {
public:
    PerturbedSampler(const KernelSpec& kernel, int N, const GridSpec& grid);
    FieldSample sample(Rng& rng) const;
    const Eigen::MatrixXd& covariance() const { return K_; }

private:
    GridSpec grid_;
    int N_;
    Eigen::MatrixXd K_;
    CovarianceSampler sampler_;
};

class ExactScalingSampler {
public:
    ExactScalingSampler(double eps, const GridSpec& grid);
    FieldSample sample(Rng& rng) const;
    double eps() const { return eps_; }
    // The hard-cutoff kernel is indefinite; negative eigenvalues are clipped.
    double min_eigenvalue() const { return sampler_.min_eigenvalue(); }
    const std::vector<double>& variance() const { return sampler_.variance(); }

private:
    GridSpec grid_;
    double eps_;
    CovarianceSampler sampler_;
};

FieldSample sample_perturbed(const KernelSpec& kernel, int N, const GridSpec& grid, Rng& rng);
FieldSample sample_exact_scaling(double eps, const GridSpec& grid, Rng& rng);

struct Mode {
    enum class Part { sin, cos };
    int n = 1;
    Part part = Part::sin;
};

// Returns the standard Gaussian coefficient of `mode` and the field with that
// mode removed (values and per-point variance).
std::pair<double, FieldSample> split_mode(const FieldSample& sample, Mode mode);
// Inverse of split_mode: puts `coefficient` back on `mode`.
FieldSample add_mode(const FieldSample& residual, Mode mode, double coefficient);

// Text row: "M N kernel v_0 ... v_{M-1}" with round-trip precision.
std::string serialize_row(const FieldSample& sample);
FieldSample parse_row(const std::string& row);

}  // namespace gmc
