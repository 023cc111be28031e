#pragma once

#include <cstddef>
#include <vector>

namespace gmc {

struct Estimate {
    double value = 0.0;
    double se = 0.0;
    std::size_t replicas = 0;
};

// Sample mean with its jackknife standard error (for the mean this equals
// s / sqrt(n)).
Estimate mean_estimate(const std::vector<double>& x);

double median(std::vector<double> x);

struct FitPoint {
    double x = 0.0;
    double y = 0.0;
    double se = 0.0;
};

struct SlopeFit {
    double slope = 0.0;
    double se = 0.0;
    double intercept = 0.0;
};

// Weighted least squares, weights 1/se^2. If every se is zero the fit is
// unweighted. The slope error is scaled by sqrt(chi2/dof) when that exceeds 1.
SlopeFit fit_slope(const std::vector<FitPoint>& points);

// Slope of log(mean of samples[i]) against log_x[i], where samples[i][r] is
// replica r at abscissa i (the same replicas at every abscissa). The error is
// the leave-one-replica-out jackknife, so correlations between points are
// accounted for.
SlopeFit fit_log_mean_slope(const std::vector<double>& log_x,
                            const std::vector<std::vector<double>>& samples);

// Kolmogorov-Smirnov distance between the sample and N(0, 1).
double ks_statistic_normal(std::vector<double> x);
// Asymptotic 1% critical value of the one-sample KS statistic.
double ks_critical_1pct(std::size_t n);

}  // namespace gmc
