#include "gmc/errors.hpp"
#include "gmc/rng.hpp"
#include "gmc/stats.hpp"

#include <doctest.h>

#include <cmath>

using namespace gmc;

TEST_CASE("exact power laws")
{
    std::vector<FitPoint> pts;
    for (int k = 1; k <= 5; ++k)
        pts.push_back({std::log(k), 2.0 * std::log(k), 0.0});
    const SlopeFit f = fit_slope(pts);
    CHECK(f.slope == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(f.se < 1e-10);

    for (auto& p : pts)
        p.y = 3.0;
    CHECK(std::abs(fit_slope(pts).slope) < 1e-12);
}

TEST_CASE("noisy power law")
{
    Rng rng(4);
    std::vector<FitPoint> pts;
    for (int k = 1; k <= 20; ++k) {
        const double x = std::log(1.0 + k);
        pts.push_back({x, 1.5 * x + std::log1p(0.01 * rng.normal()), 0.01});
    }
    const SlopeFit f = fit_slope(pts);
    CHECK(std::abs(f.slope - 1.5) < 0.05);
    CHECK(f.se > 0.0);
}

TEST_CASE("fit_slope preconditions")
{
    CHECK_THROWS_AS(fit_slope({{0, 0, 0}, {1, 1, 0}}), ParameterError);
    CHECK_THROWS_AS(fit_slope({{1, 0, 0}, {1, 1, 0}, {1, 2, 0}}), ParameterError);
}

TEST_CASE("mean, median and jackknife")
{
    const Estimate e = mean_estimate({1.0, 2.0, 3.0, 4.0});
    CHECK(e.value == 2.5);
    CHECK(e.se == doctest::Approx(std::sqrt(5.0 / 3.0 / 4.0)));
    CHECK(median({3.0, 1.0, 2.0}) == 2.0);
    CHECK(median({4.0, 1.0, 2.0, 3.0}) == 2.5);

    // Log-mean slope of an exact power law on identical replicas.
    std::vector<double> lx{0.0, 1.0, 2.0};
    std::vector<std::vector<double>> s(3, std::vector<double>(10));
    Rng rng(1);
    for (int r = 0; r < 10; ++r) {
        const double c = 1.0 + rng.uniform();
        for (int i = 0; i < 3; ++i)
            s[i][r] = c * std::exp(0.7 * lx[i]);
    }
    const SlopeFit f = fit_log_mean_slope(lx, s);
    CHECK(f.slope == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(f.se < 1e-10);
}

TEST_CASE("KS statistic")
{
    Rng rng(2);
    std::vector<double> x(5000), y(5000);
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = rng.normal();
        y[i] = rng.normal() + 0.2;
    }
    CHECK(ks_statistic_normal(x) < ks_critical_1pct(x.size()));
    CHECK(ks_statistic_normal(y) > ks_critical_1pct(y.size()));
}
