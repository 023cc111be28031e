#include "gmc/stats.hpp"

#include "gmc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gmc {

Estimate mean_estimate(const std::vector<double>& x)
{
    Estimate e;
    e.replicas = x.size();
    if (x.empty())
        return e;
    const double n = static_cast<double>(x.size());
    e.value = std::accumulate(x.begin(), x.end(), 0.0) / n;
    if (x.size() < 2)
        return e;
    double ss = 0.0;
    for (double v : x)
        ss += (v - e.value) * (v - e.value);
    e.se = std::sqrt(ss / (n - 1.0) / n);
    return e;
}

double median(std::vector<double> x)
{
    if (x.empty())
        throw ParameterError("median of an empty sample");
    const std::size_t mid = x.size() / 2;
    std::nth_element(x.begin(), x.begin() + static_cast<long>(mid), x.end());
    const double hi = x[mid];
    if (x.size() % 2 == 1)
        return hi;
    const double lo = *std::max_element(x.begin(), x.begin() + static_cast<long>(mid));
    return 0.5 * (lo + hi);
}

SlopeFit fit_slope(const std::vector<FitPoint>& points)
{
    if (points.size() < 3)
        throw ParameterError("slope fit needs at least 3 points");
    const bool weighted = std::any_of(points.begin(), points.end(),
                                      [](const FitPoint& p) { return p.se > 0.0; });
    std::vector<double> w(points.size(), 1.0);
    if (weighted)
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (!(points[i].se > 0.0))
                throw ParameterError("mixed zero and nonzero standard errors in slope fit");
            w[i] = 1.0 / (points[i].se * points[i].se);
        }
    double sw = 0, sx = 0, sy = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        sw += w[i];
        sx += w[i] * points[i].x;
        sy += w[i] * points[i].y;
    }
    const double mx = sx / sw, my = sy / sw;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        sxx += w[i] * (points[i].x - mx) * (points[i].x - mx);
        sxy += w[i] * (points[i].x - mx) * (points[i].y - my);
    }
    const double xscale = std::max(1.0, std::abs(mx));
    if (!(sxx > 1e-24 * sw * xscale * xscale))
        throw ParameterError("degenerate abscissas in slope fit");
    SlopeFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double chi2 = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double r = points[i].y - fit.intercept - fit.slope * points[i].x;
        chi2 += w[i] * r * r;
    }
    const double dof = static_cast<double>(points.size() - 2);
    const double scale = weighted ? std::max(1.0, chi2 / dof) : chi2 / dof;
    fit.se = std::sqrt(scale / sxx);
    return fit;
}

namespace {

double ols_slope(const std::vector<double>& x, const std::vector<double>& y)
{
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    return sxy / sxx;
}

}  // namespace

SlopeFit fit_log_mean_slope(const std::vector<double>& log_x,
                            const std::vector<std::vector<double>>& samples)
{
    const std::size_t K = log_x.size();
    if (K < 3 || samples.size() != K)
        throw ParameterError("slope fit needs at least 3 abscissas with samples");
    const std::size_t R = samples.front().size();
    if (R < 2)
        throw ParameterError("jackknife needs at least 2 replicas");
    std::vector<double> sum(K, 0.0), y(K);
    for (std::size_t i = 0; i < K; ++i) {
        if (samples[i].size() != R)
            throw ParameterError("ragged sample table");
        for (double v : samples[i])
            sum[i] += v;
        y[i] = std::log(sum[i] / static_cast<double>(R));
    }
    SlopeFit fit;
    fit.slope = ols_slope(log_x, y);
    double mx = std::accumulate(log_x.begin(), log_x.end(), 0.0) / static_cast<double>(K);
    double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(K);
    fit.intercept = my - fit.slope * mx;

    std::vector<double> loo(R);
    for (std::size_t r = 0; r < R; ++r) {
        for (std::size_t i = 0; i < K; ++i)
            y[i] = std::log((sum[i] - samples[i][r]) / static_cast<double>(R - 1));
        loo[r] = ols_slope(log_x, y);
    }
    const double mean = std::accumulate(loo.begin(), loo.end(), 0.0) / static_cast<double>(R);
    double ss = 0.0;
    for (double s : loo)
        ss += (s - mean) * (s - mean);
    fit.se = std::sqrt(ss * static_cast<double>(R - 1) / static_cast<double>(R));
    return fit;
}

double ks_statistic_normal(std::vector<double> x)
{
    std::sort(x.begin(), x.end());
    const double n = static_cast<double>(x.size());
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double F = 0.5 * std::erfc(-x[i] / std::sqrt(2.0));
        d = std::max({d, F - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - F});
    }
    return d;
}

double ks_critical_1pct(std::size_t n) { return 1.6276 / std::sqrt(static_cast<double>(n)); }

}  // namespace gmc
