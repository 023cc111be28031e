#include "gmc/experiments.hpp"

#include "gmc/errors.hpp"
#include "gmc/field.hpp"
#include "gmc/kernels.hpp"
#include "gmc/rng.hpp"
#include "gmc/zeros.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>

namespace gmc {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

std::string fmt(const char* f, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

std::vector<double> dyadic(int k0, int k1, bool one_minus)
{
    std::vector<double> v;
    for (int k = k0; k <= k1; ++k)
        v.push_back(one_minus ? 1.0 - std::ldexp(1.0, -k) : std::ldexp(1.0, -k));
    return v;
}

double elapsed(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void stamp(ExperimentResult& res, double wall)
{
    for (auto& row : res.rows)
        row.wall_time = wall;
}

ResultRow make_row(const std::string& name, std::vector<std::pair<std::string, double>> params,
                   const Estimate& e, std::uint64_t seed)
{
    return {name, std::move(params), e.value, e.se, e.replicas, seed, 0.0};
}

// Column i of a replica-major table.
std::vector<double> column(const std::vector<std::vector<double>>& table, std::size_t i)
{
    std::vector<double> c(table.size());
    for (std::size_t r = 0; r < table.size(); ++r)
        c[r] = table[r][i];
    return c;
}

std::vector<std::vector<double>> transpose(const std::vector<std::vector<double>>& table,
                                           std::size_t cols)
{
    std::vector<std::vector<double>> out(cols);
    for (std::size_t i = 0; i < cols; ++i)
        out[i] = column(table, i);
    return out;
}

// Ratio of two sample means on paired replicas, jackknife error.
Estimate ratio_of_means(const std::vector<double>& num, const std::vector<double>& den)
{
    const std::size_t n = num.size();
    const double sn = std::accumulate(num.begin(), num.end(), 0.0);
    const double sd = std::accumulate(den.begin(), den.end(), 0.0);
    Estimate e{sn / sd, 0.0, n};
    if (n < 2)
        return e;
    std::vector<double> loo(n);
    for (std::size_t r = 0; r < n; ++r)
        loo[r] = (sn - num[r]) / (sd - den[r]);
    const double m = std::accumulate(loo.begin(), loo.end(), 0.0) / static_cast<double>(n);
    double ss = 0.0;
    for (double v : loo)
        ss += (v - m) * (v - m);
    e.se = std::sqrt(ss * static_cast<double>(n - 1) / static_cast<double>(n));
    return e;
}

// Canonical-field measure for replica r of a stream.
ChaosMeasure replica_measure(const ExperimentConfig& cfg, std::uint64_t tag, std::size_t r,
                             int N)
{
    Rng rng(derive_seed(cfg.master_seed, tag, r));
    const GridSpec grid = GridSpec::circle(cfg.M);
    return build_measure(sample_canonical(N, grid, rng), cfg.gamma);
}

void add_slope(ExperimentResult& res, const SlopeFit& fit, double expected)
{
    res.summary.emplace_back("slope", fit.slope);
    res.summary.emplace_back("slope_se", fit.se);
    res.summary.emplace_back("expected", expected);
}

// Per-replica angle averages of g(f, r e^{ia}) at every radius, fitted
// against log(1 - r).
template <class G>
ExperimentResult radial_slope(const std::string& name, std::uint64_t tag,
                              const ExperimentConfig& cfg, double expected, G&& g)
{
    const auto t0 = std::chrono::steady_clock::now();
    const int N = cfg.max_N();
    const auto table = kernels::parallel::replica_map(cfg.replicas, cfg.workers, [&](std::size_t r) {
        const InnerFunctionEval f(replica_measure(cfg, tag, r, N));
        std::vector<double> out(cfg.radii.size());
        for (std::size_t i = 0; i < cfg.radii.size(); ++i) {
            double acc = 0.0;
            for (int k = 0; k < cfg.angles; ++k)
                acc += g(f, std::polar(cfg.radii[i], 2.0 * std::numbers::pi * k / cfg.angles));
            out[i] = acc / cfg.angles;
        }
        return out;
    });
    const auto samples = transpose(table, cfg.radii.size());

    ExperimentResult res{name, {}, {}};
    std::vector<double> lx;
    for (std::size_t i = 0; i < cfg.radii.size(); ++i) {
        lx.push_back(std::log(1.0 - cfg.radii[i]));
        res.rows.push_back(make_row(name, {{"r", cfg.radii[i]}}, mean_estimate(samples[i]),
                                    cfg.master_seed));
    }
    add_slope(res, fit_log_mean_slope(lx, samples), expected);
    stamp(res, elapsed(t0));
    return res;
}

std::string s_key(double s) { return fmt("s%g", s); }
std::string beta_key(double b) { return fmt("beta%g", b); }

}  // namespace

int ExperimentConfig::max_N() const
{
    if (N_schedule.empty())
        throw ConfigError("N_schedule is empty");
    return *std::max_element(N_schedule.begin(), N_schedule.end());
}

void ExperimentConfig::validate(bool uses_moment) const
{
    if (!(gamma > 0.0) || gamma > kSqrt2 + 1e-12)
        throw ConfigError("gamma must lie in (0, sqrt 2]");
    for (int N : N_schedule)
        if (N < 1)
            throw ConfigError("N_schedule entries must be >= 1");
    if (!is_power_of_two(M) || M < 8)
        throw ConfigError("M must be a power of two >= 8");
    if (M < 4 * static_cast<std::size_t>(max_N()))
        throw ConfigError("M must be at least 4 * max(N_schedule)");
    if (replicas < 2)
        throw ConfigError("replicas must be >= 2");
    for (double r : radii)
        if (!(r > 0.0 && r < 1.0))
            throw ConfigError("radii must lie in (0, 1)");
    if (uses_moment && !(p < 2.0 / (gamma * gamma)))
        throw ConfigError("moment order p must be below 2/gamma^2");
    if (p < 0.0)
        throw ConfigError("p must be >= 0");
    for (double b : beta_list)
        if (!(b > 0.0 && b <= 1.0))
            throw ConfigError("beta values must lie in (0, 1]");
    if (!(delta > 0.0))
        throw ConfigError("delta must be positive");
    if (workers < 0)
        throw ConfigError("workers must be >= 0");
    if (angles < 1)
        throw ConfigError("angles must be >= 1");
    if (!is_power_of_two(interval_M) || interval_M < 8)
        throw ConfigError("interval_M must be a power of two >= 8");
    if (!(interval_eps_cells >= 1.0))
        throw ConfigError("interval_eps_cells must be >= 1");
    if (levels < 1 || std::ldexp(1.0, -levels - 2) * static_cast<double>(interval_M) < 1.0)
        throw ConfigError("levels too deep for interval_M");
}

double ExperimentResult::summary_value(const std::string& key) const
{
    for (const auto& [k, v] : summary)
        if (k == key)
            return v;
    throw ParameterError("no summary entry '" + key + "' in " + name);
}

std::string ExperimentResult::summary_line() const
{
    std::string s = name + ":";
    for (const auto& [k, v] : summary)
        s += " " + k + "=" + fmt("%.6g", v);
    return s;
}

bool bounded_trend(const std::vector<double>& v, double max_ratio)
{
    for (std::size_t i = 1; i < v.size(); ++i)
        if (!(v[i] <= max_ratio * v[i - 1]))
            return false;
    return true;
}

bool growing_trend(const std::vector<double>& v, double min_increment)
{
    for (std::size_t i = 1; i < v.size(); ++i)
        if (!(v[i] >= (1.0 + min_increment) * v[i - 1]))
            return false;
    return v.size() >= 2;
}

double imag_h_power(const InnerFunctionEval& f, double r, double p, int angles)
{
    if (angles < 1)
        throw ParameterError("angles must be >= 1");
    double acc = 0.0;
    for (int k = 0; k < angles; ++k) {
        const double y = f.conj_poisson_y(std::polar(r, 2.0 * std::numbers::pi * k / angles));
        acc += p == 0.0 ? 1.0 : std::pow(std::abs(y), -p);
    }
    return acc / angles;
}

ExperimentResult exp_x_moment(const ExperimentConfig& cfg)
{
    cfg.validate(true);
    const double p = cfg.p;
    return radial_slope("x-moment", stream::x_moment, cfg,
                        p * (1.0 - p) * cfg.gamma * cfg.gamma / 2.0,
                        [p](const InnerFunctionEval& f, cplx z) {
                            return std::pow(f.poisson_x(z), p);
                        });
}

ExperimentResult exp_log_phi(const ExperimentConfig& cfg)
{
    cfg.validate(false);
    return radial_slope("log-phi", stream::log_phi, cfg, cfg.gamma * cfg.gamma / 8.0,
                        [](const InnerFunctionEval& f, cplx z) { return -f.log_abs_phi(z); });
}

ExperimentResult exp_imag_bound(const ExperimentConfig& cfg)
{
    cfg.validate(false);
    const auto t0 = std::chrono::steady_clock::now();
    const int N = cfg.max_N();
    const auto table = kernels::parallel::replica_map(cfg.replicas, cfg.workers, [&](std::size_t r) {
        const InnerFunctionEval f(replica_measure(cfg, stream::imag_bound, r, N));
        std::vector<double> out(cfg.radii.size());
        for (std::size_t i = 0; i < cfg.radii.size(); ++i)
            out[i] = imag_h_power(f, cfg.radii[i], cfg.p, cfg.angles);
        return out;
    });
    ExperimentResult res{"imag-bound", {}, {}};
    double lo = INFINITY, hi = 0.0;
    for (std::size_t i = 0; i < cfg.radii.size(); ++i) {
        const Estimate e = mean_estimate(column(table, i));
        lo = std::min(lo, e.value);
        hi = std::max(hi, e.value);
        res.rows.push_back(make_row(res.name, {{"r", cfg.radii[i]}}, e, cfg.master_seed));
    }
    const double ratio = hi / lo;
    res.summary.emplace_back("max_over_min", ratio);
    res.summary.emplace_back("bounded", ratio < 5.0 ? 1.0 : 0.0);
    stamp(res, elapsed(t0));
    return res;
}

ExperimentResult exp_zero_density(const ExperimentConfig& cfg)
{
    cfg.validate(false);
    if (cfg.radii.empty() || cfg.beta_list.empty())
        throw ConfigError("zero-density needs radii and beta_list");
    const auto t0 = std::chrono::steady_clock::now();
    const int N = cfg.max_N();
    std::vector<double> radii = cfg.radii;
    std::sort(radii.begin(), radii.end());
    const double r_top = radii.back();
    const std::size_t nb = cfg.beta_list.size(), nr = radii.size();

    struct Replica {
        std::vector<double> s;  // beta-major, then radius
        bool complete = true;
    };
    const auto reps = kernels::parallel::replica_map(cfg.replicas, cfg.workers, [&](std::size_t r) {
        const InnerFunctionEval f(replica_measure(cfg, stream::zero_density, r, N));
        const ZeroSet all = locate_zeros(f, r_top);
        Replica out;
        out.complete = all.complete;
        out.s.resize(nb * nr);
        for (std::size_t i = 0; i < nr; ++i) {
            const ZeroSet zs = restrict_zeros(all, radii[i]);
            for (std::size_t b = 0; b < nb; ++b)
                out.s[b * nr + i] = beta_sum(zs, cfg.beta_list[b]);
        }
        return out;
    });

    ExperimentResult res{"zero-density", {}, {}};
    std::size_t incomplete = 0;
    for (const auto& rep : reps)
        incomplete += rep.complete ? 0 : 1;
    constexpr int kBoot = 200;
    for (std::size_t b = 0; b < nb; ++b) {
        std::vector<double> medians(nr);
        for (std::size_t i = 0; i < nr; ++i) {
            std::vector<double> col(reps.size());
            for (std::size_t r = 0; r < reps.size(); ++r)
                col[r] = reps[r].s[b * nr + i];
            medians[i] = median(col);
            // Bootstrap standard error of the median, seeded per table cell.
            Rng rng(derive_seed(cfg.master_seed, stream::zero_density,
                                (1ull << 40) + b * nr + i));
            std::vector<double> boot(kBoot), resample(col.size());
            for (auto& m : boot) {
                for (auto& v : resample)
                    v = col[static_cast<std::size_t>(rng.uniform() * col.size()) % col.size()];
                m = median(resample);
            }
            const Estimate be = mean_estimate(boot);
            const double sd = be.se * std::sqrt(static_cast<double>(kBoot));
            res.rows.push_back(make_row(res.name, {{"beta", cfg.beta_list[b]}, {"r_max", radii[i]}},
                                        {medians[i], sd, col.size()}, cfg.master_seed));
        }
        const std::string key = beta_key(cfg.beta_list[b]);
        double max_ratio = 0.0, min_ratio = INFINITY;
        for (std::size_t i = 1; i < nr; ++i) {
            const double q = medians[i] / medians[i - 1];
            max_ratio = std::max(max_ratio, q);
            min_ratio = std::min(min_ratio, q);
        }
        res.summary.emplace_back(key + "_max_ratio", max_ratio);
        res.summary.emplace_back(key + "_min_ratio", min_ratio);
        res.summary.emplace_back(key + "_bounded", bounded_trend(medians, 1.3) ? 1.0 : 0.0);
        res.summary.emplace_back(key + "_growing", growing_trend(medians, 0.1) ? 1.0 : 0.0);
    }
    res.summary.emplace_back("beta_star", 1.0 - cfg.gamma * cfg.gamma / 8.0);
    res.summary.emplace_back("incomplete_replicas", static_cast<double>(incomplete));
    stamp(res, elapsed(t0));
    return res;
}

ExperimentResult exp_seiberg(const ExperimentConfig& cfg)
{
    cfg.validate(true);
    if (cfg.s_list.empty())
        throw ConfigError("seiberg needs s_list");
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<int> Ns = cfg.N_schedule;
    std::sort(Ns.begin(), Ns.end());
    const int N_top = Ns.back();
    const std::size_t ns = cfg.s_list.size(), nn = Ns.size();
    const int rot = cfg.angles;

    // |1 - e^{i(2 pi d/M - pi/M)}|^{-s} for offsets d, per (N, s).
    std::vector<std::vector<double>> kern(nn * ns);
    for (std::size_t a = 0; a < nn; ++a) {
        const std::size_t M = 4 * static_cast<std::size_t>(Ns[a]);
        if (M % static_cast<std::size_t>(rot) != 0)
            throw ConfigError("rotation count must divide the grid size");
        for (std::size_t b = 0; b < ns; ++b) {
            auto& k = kern[a * ns + b];
            k.resize(M);
            for (std::size_t d = 0; d < M; ++d) {
                const double t = std::numbers::pi * (2.0 * static_cast<double>(d) - 1.0) / M;
                k[d] = std::pow(2.0 * std::abs(std::sin(0.5 * t)), -cfg.s_list[b]);
            }
        }
    }

    const auto table = kernels::parallel::replica_map(cfg.replicas, cfg.workers, [&](std::size_t r) {
        Rng rng(derive_seed(cfg.master_seed, stream::seiberg, r));
        const CanonicalCoefficients c = CanonicalCoefficients::draw(N_top, rng);
        std::vector<double> out(nn * ns);
        for (std::size_t a = 0; a < nn; ++a) {
            const GridSpec grid = GridSpec::circle(4 * static_cast<std::size_t>(Ns[a]));
            const ChaosMeasure mu = build_measure(synthesize_canonical(c, Ns[a], grid), cfg.gamma);
            const auto& w = mu.weights();
            const std::size_t M = grid.M, step = M / static_cast<std::size_t>(rot);
            for (std::size_t b = 0; b < ns; ++b) {
                const auto& k = kern[a * ns + b];
                double acc = 0.0;
                for (int q = 0; q < rot; ++q) {
                    const std::size_t shift = static_cast<std::size_t>(q) * step;
                    double mass = 0.0;
                    for (std::size_t j = 0; j < M; ++j)
                        mass += w[j] * k[(j + M - shift) % M];
                    acc += std::pow(mass, cfg.p);
                }
                out[a * ns + b] = acc / rot;
            }
        }
        return out;
    });

    ExperimentResult res{"seiberg", {}, {}};
    for (std::size_t b = 0; b < ns; ++b) {
        std::vector<double> means(nn);
        for (std::size_t a = 0; a < nn; ++a) {
            const Estimate e = mean_estimate(column(table, a * ns + b));
            means[a] = e.value;
            res.rows.push_back(make_row(res.name, {{"s", cfg.s_list[b]}, {"N", Ns[a]}}, e,
                                        cfg.master_seed));
        }
        const std::string key = s_key(cfg.s_list[b]);
        const double last = nn >= 2 ? std::abs(means[nn - 1] / means[nn - 2] - 1.0) : 0.0;
        res.summary.emplace_back(key + "_last_change", last);
        res.summary.emplace_back(key + "_stable", last < 0.1 ? 1.0 : 0.0);
        res.summary.emplace_back(key + "_increasing", growing_trend(means, 0.0) ? 1.0 : 0.0);
        res.summary.emplace_back(key + "_growth25", growing_trend(means, 0.25) ? 1.0 : 0.0);
    }
    res.summary.emplace_back("s_threshold", 1.0 + cfg.gamma * cfg.gamma / 2.0 * (1.0 - cfg.p));
    stamp(res, elapsed(t0));
    return res;
}

ExperimentResult exp_multifractal(const ExperimentConfig& cfg)
{
    cfg.validate(false);
    if (cfg.radii.size() < 3)
        throw ConfigError("multifractal needs at least 3 eps values");
    const auto t0 = std::chrono::steady_clock::now();
    const int N = cfg.max_N();
    const double two_pi = 2.0 * std::numbers::pi;
    for (double eps : cfg.radii)
        if (eps < GridSpec::circle(cfg.M).spacing())
            throw ConfigError("eps below the grid spacing");
    const auto table = kernels::parallel::replica_map(cfg.replicas, cfg.workers, [&](std::size_t r) {
        const ChaosMeasure mu = replica_measure(cfg, stream::multifractal, r, N);
        std::vector<double> out(cfg.radii.size());
        for (std::size_t i = 0; i < cfg.radii.size(); ++i) {
            const double eps = cfg.radii[i];
            const double lo = std::pow(eps, cfg.delta), hi = std::pow(eps, -cfg.delta);
            const auto centres = static_cast<std::size_t>(std::ceil(two_pi / eps - 1e-9));
            double count = 0.0;
            for (std::size_t c = 0; c < centres; ++c) {
                const double a = mu.average(static_cast<double>(c) * eps, eps);
                count += (a > lo && a < hi) ? 1.0 : 0.0;
            }
            out[i] = count;
        }
        return out;
    });
    const auto samples = transpose(table, cfg.radii.size());
    ExperimentResult res{"multifractal", {}, {}};
    std::vector<double> lx;
    for (std::size_t i = 0; i < cfg.radii.size(); ++i) {
        lx.push_back(-std::log(cfg.radii[i]));
        res.rows.push_back(make_row(res.name, {{"eps", cfg.radii[i]}, {"delta", cfg.delta}},
                                    mean_estimate(samples[i]), cfg.master_seed));
    }
    add_slope(res, fit_log_mean_slope(lx, samples), 1.0 - cfg.gamma * cfg.gamma / 8.0);
    stamp(res, elapsed(t0));
    return res;
}

ExperimentResult exp_mass_scaling(const ExperimentConfig& cfg)
{
    cfg.validate(true);
    const auto t0 = std::chrono::steady_clock::now();
    const double g2 = cfg.gamma * cfg.gamma, p = cfg.p;
    ExperimentResult res{"mass-scaling", {}, {}};

    if (cfg.radii.size() >= 3) {
        std::vector<std::vector<double>> samples;
        const auto est = mass_moments_mc(cfg.gamma, p, cfg.radii, cfg.max_N(), cfg.replicas,
                                         cfg.master_seed, cfg.workers, &samples);
        std::vector<double> lx;
        for (std::size_t i = 0; i < cfg.radii.size(); ++i) {
            lx.push_back(std::log(cfg.radii[i]));
            res.rows.push_back(make_row(res.name, {{"eps", cfg.radii[i]}, {"p", p}}, est[i],
                                        cfg.master_seed));
        }
        add_slope(res, fit_log_mean_slope(lx, samples), p * (1.0 + g2 / 2.0) - p * p * g2 / 2.0);
    }

    // Dyadic shells R_k = {2^-(k+2) < |x| <= 2^-(k+1)} of the exact-scaling
    // field on [-1/2, 1/2], weighted by |x|^-s.
    const GridSpec grid = GridSpec::interval(cfg.interval_M);
    const ExactScalingSampler sampler(cfg.interval_eps_cells * grid.spacing(), grid);
    const int L = cfg.levels;
    const std::size_t ns = std::max<std::size_t>(cfg.s_list.size(), 1);
    const std::vector<double> s_list = cfg.s_list.empty() ? std::vector<double>{0.0} : cfg.s_list;
    std::vector<int> shell(grid.M, -1);
    for (std::size_t j = 0; j < grid.M; ++j) {
        const double ax = std::abs(grid.point(j));
        for (int k = 0; k <= L; ++k)
            if (ax > std::ldexp(1.0, -k - 2) && ax <= std::ldexp(1.0, -k - 1))
                shell[j] = k;
    }
    const auto table = kernels::parallel::replica_map(cfg.replicas, cfg.workers, [&](std::size_t r) {
        Rng rng(derive_seed(cfg.master_seed, stream::mass_scaling, r));
        const ChaosMeasure mu = build_measure(sampler.sample(rng), cfg.gamma);
        std::vector<double> out(ns * static_cast<std::size_t>(L + 1));
        for (std::size_t b = 0; b < ns; ++b) {
            std::vector<double> I(static_cast<std::size_t>(L + 1), 0.0);
            for (std::size_t j = 0; j < grid.M; ++j)
                if (shell[j] >= 0)
                    I[static_cast<std::size_t>(shell[j])] +=
                        mu.weights()[j] * std::pow(std::abs(grid.point(j)), -s_list[b]);
            for (int k = 0; k <= L; ++k)
                out[b * static_cast<std::size_t>(L + 1) + static_cast<std::size_t>(k)] =
                    std::pow(I[static_cast<std::size_t>(k)], p);
        }
        return out;
    });
    for (std::size_t b = 0; b < ns; ++b) {
        const double s = s_list[b];
        const double expected = std::exp2(s * p - p * (1.0 + g2 / 2.0) + p * p * g2 / 2.0);
        const std::size_t base = b * static_cast<std::size_t>(L + 1);
        for (int k = 0; k < L; ++k) {
            const Estimate q = ratio_of_means(column(table, base + static_cast<std::size_t>(k) + 1),
                                              column(table, base + static_cast<std::size_t>(k)));
            res.rows.push_back(make_row(res.name, {{"s", s}, {"p", p}, {"k", k}}, q,
                                        cfg.master_seed));
        }
        // Geometric mean of the L successive ratios.
        const Estimate all = ratio_of_means(column(table, base + static_cast<std::size_t>(L)),
                                            column(table, base));
        const double mean_ratio = std::pow(all.value, 1.0 / L);
        const std::string key = s_key(s);
        res.summary.emplace_back(key + "_dyadic_ratio", mean_ratio);
        res.summary.emplace_back(key + "_dyadic_ratio_se",
                                 mean_ratio * all.se / (L * all.value));
        res.summary.emplace_back(key + "_dyadic_expected", expected);
    }
    res.summary.emplace_back("interval_min_eigenvalue", sampler.min_eigenvalue());
    stamp(res, elapsed(t0));
    return res;
}

const std::vector<std::string>& experiment_names()
{
    static const std::vector<std::string> names{"x-moment",     "log-phi",      "zero-density",
                                                "seiberg",      "multifractal", "mass-scaling",
                                                "imag-bound"};
    return names;
}

ExperimentConfig default_config(const std::string& name)
{
    ExperimentConfig c;
    c.gamma = 1.0;
    c.p = 0.5;
    c.N_schedule = {4096};
    c.M = 16384;
    if (name == "x-moment" || name == "log-phi") {
        c.replicas = 2000;
        c.radii = dyadic(3, 7, true);
    } else if (name == "zero-density") {
        c.N_schedule = {1024};
        c.M = 4096;
        c.replicas = 200;
        c.radii = dyadic(4, 7, true);
        c.beta_list = {0.8, 0.95, 1.0};
    } else if (name == "seiberg") {
        c.N_schedule = {256, 512, 1024, 2048, 4096};
        c.replicas = 1000;
        c.s_list = {0.0, 1.1, 1.4};
    } else if (name == "multifractal") {
        c.replicas = 500;
        c.delta = 0.1;
        c.radii = dyadic(4, 9, false);
    } else if (name == "mass-scaling") {
        c.replicas = 2000;
        c.radii = dyadic(3, 7, false);
        c.s_list = {0.0, 1.0};
    } else if (name == "imag-bound") {
        c.replicas = 500;
        c.radii = {0.9, 0.99, 0.999};
    } else {
        throw ConfigError("unknown experiment '" + name + "'");
    }
    return c;
}

ExperimentResult run_experiment(const std::string& name, const ExperimentConfig& cfg)
{
    if (name == "x-moment")
        return exp_x_moment(cfg);
    if (name == "log-phi")
        return exp_log_phi(cfg);
    if (name == "zero-density")
        return exp_zero_density(cfg);
    if (name == "seiberg")
        return exp_seiberg(cfg);
    if (name == "multifractal")
        return exp_multifractal(cfg);
    if (name == "mass-scaling")
        return exp_mass_scaling(cfg);
    if (name == "imag-bound")
        return exp_imag_bound(cfg);
    throw ConfigError("unknown experiment '" + name + "'");
}

}  // namespace gmc
