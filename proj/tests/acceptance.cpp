// Acceptance suite: one PASS/FAIL line per criterion.
//   acceptance            run all twelve
//   acceptance --only 7   run one
#include "gmc/cli.hpp"
#include "gmc/decomp.hpp"
#include "gmc/errors.hpp"
#include "gmc/experiments.hpp"
#include "gmc/kernels.hpp"
#include "gmc/zeros.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <regex>
#include <sstream>
#include <string>

using namespace gmc;
using std::numbers::pi;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string f(const char* fmt, double a, double b = 0, double c = 0, double d = 0)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, fmt, a, b, c, d);
    return buf;
}

InnerFunctionEval roots_of_unity(int n)
{
    std::vector<double> t(n), m(n, 1.0 / n);
    for (int k = 0; k < n; ++k)
        t[k] = 2 * pi * k / n;
    return InnerFunctionEval(t, m);
}

Outcome ac1()
{
    Rng rng(1);
    double worst = 0.0;
    bool zeros_ok = true;
    for (int n = 1; n <= 6; ++n) {
        const InnerFunctionEval fn = roots_of_unity(n);
        for (int i = 0; i < 20; ++i) {
            const cplx z = std::polar(0.99 * std::sqrt(rng.uniform()), 2 * pi * rng.uniform());
            const cplx want = std::pow(z, n);
            worst = std::max(worst, std::abs(fn.phi(z) - want) / std::abs(want));
        }
        const ZeroSet zs = locate_zeros(fn, 0.9);
        zeros_ok = zeros_ok && zs.zeros.size() == 1 && zs.zeros[0].multiplicity == n &&
                   std::abs(zs.zeros[0].z) < 1e-9;
    }
    return {worst < 1e-10 && zeros_ok,
            f("max rel err %.2e (tol 1e-10), n-fold zero at 0 recovered: ", worst) +
                (zeros_ok ? "yes" : "no")};
}

Outcome ac2()
{
    Rng rng(2);
    int missed = 0, spurious = 0, unconserved = 0;
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + static_cast<int>(rng.uniform() * 8);
        std::vector<cplx> truth(n);
        for (auto& z : truth)
            z = std::polar(0.85 * std::sqrt(rng.uniform()), 2 * pi * rng.uniform());
        const BlaschkeProduct b = make_blaschke(truth);
        const ZeroSet zs = locate_zeros(b, 0.9);
        int annulus = 0;
        for (const auto& [k, c] : zs.annulus_counts)
            annulus += c;
        if (zs.total_multiplicity() != count_zeros(b, 0.9) || annulus != zs.total_multiplicity())
            ++unconserved;
        std::vector<bool> used(zs.zeros.size(), false);
        for (const cplx& t : truth) {
            double best = INFINITY;
            std::size_t arg = 0;
            for (std::size_t i = 0; i < zs.zeros.size(); ++i)
                if (std::abs(zs.zeros[i].z - t) < best) {
                    best = std::abs(zs.zeros[i].z - t);
                    arg = i;
                }
            worst = std::max(worst, best);
            if (best < 1e-9)
                used[arg] = true;
            else
                ++missed;
        }
        for (std::size_t i = 0; i < used.size(); ++i)
            spurious += used[i] ? 0 : 1;
        if (zs.total_multiplicity() != n)
            ++missed;
    }
    return {missed == 0 && spurious == 0 && unconserved == 0,
            f("100 products: worst error %.2e (tol 1e-9), missed %.0f, spurious %.0f, "
              "count mismatches %.0f",
              worst, missed, spurious, unconserved)};
}

Outcome ac3()
{
    const int N = 1 << 12;
    const GridSpec g = GridSpec::circle(1 << 14);
    const std::size_t R = 10000, half = g.M / 2;
    const auto vals = kernels::parallel::replica_map(R, 0, [&](std::size_t r) {
        Rng rng(derive_seed(3, stream::field, r));
        const FieldSample s = sample_canonical(N, g, rng);
        double acc = 0.0;
        for (std::size_t j = 0; j < g.M; ++j)
            acc += s.values[j] * s.values[(j + half) % g.M];
        return acc / static_cast<double>(g.M);
    });
    const Estimate e = mean_estimate(vals);
    const double target = -std::log(2.0);
    return {std::abs(e.value - target) <= 0.02,
            f("lag-pi covariance %.5f +- %.5f, target %.5f +- 0.02", e.value, e.se, target)};
}

Outcome slope_check(const ExperimentResult& r, double lo, double hi)
{
    const double s = r.summary_value("slope"), se = r.summary_value("slope_se");
    return {s >= lo && s <= hi, f("slope %.4f +- %.4f, window [%.4f, %.4f]", s, se, lo, hi)};
}

Outcome ac4()
{
    ExperimentConfig c = default_config("mass-scaling");
    c.s_list = {0.0, 1.0};
    const ExperimentResult r = exp_mass_scaling(c);
    Outcome o = slope_check(r, 0.575, 0.675);
    o.detail += f("; dyadic ratio s=0 %.4f (expect %.4f), s=1 %.4f (expect %.4f)",
                  r.summary_value("s0_dyadic_ratio"), r.summary_value("s0_dyadic_expected"),
                  r.summary_value("s1_dyadic_ratio"), r.summary_value("s1_dyadic_expected"));
    return o;
}

Outcome ac5() { return slope_check(exp_x_moment(default_config("x-moment")), 0.075, 0.175); }
Outcome ac6() { return slope_check(exp_log_phi(default_config("log-phi")), 0.07, 0.19); }

Outcome ac7()
{
    const ExperimentResult r = exp_zero_density(default_config("zero-density"));
    const bool bounded = r.summary_value("beta0.95_bounded") == 1.0;
    const bool growing = r.summary_value("beta0.8_growing") == 1.0;
    return {bounded && growing,
            f("beta=0.95 max ratio %.3f (<= 1.3), beta=0.8 min ratio %.3f (>= 1.1), "
              "beta=1 max ratio %.3f, incomplete replicas %.0f",
              r.summary_value("beta0.95_max_ratio"), r.summary_value("beta0.8_min_ratio"),
              r.summary_value("beta1_max_ratio"), r.summary_value("incomplete_replicas"))};
}

Outcome ac8()
{
    const ExperimentResult r = exp_seiberg(default_config("seiberg"));
    const bool stable = r.summary_value("s1.1_stable") == 1.0;
    const bool grows = r.summary_value("s1.4_increasing") == 1.0;
    return {stable && grows,
            f("s=1.1 last-step change %.3f (< 0.10); ", r.summary_value("s1.1_last_change")) +
                "s=1.4 increasing: " + (grows ? "yes" : "no") + ", 25%/doubling: " +
                (r.summary_value("s1.4_growth25") == 1.0 ? "yes" : "no") +
                f(", s=1.4 last change %.3f, s=0 last change %.4f",
                  r.summary_value("s1.4_last_change"), r.summary_value("s0_last_change"))};
}

Outcome ac9() { return slope_check(exp_multifractal(default_config("multifractal")), 0.775, 0.975); }

Outcome ac10()
{
    const int N = 64;
    const GridSpec grid = GridSpec::circle(256);
    Eigen::MatrixXd mixed = Eigen::MatrixXd::Zero(5, 5);
    mixed(0, 0) = 0.2;
    mixed(1, 1) = -1.0;
    mixed(3, 3) = 0.1;
    mixed(2, 4) = mixed(4, 2) = 0.05;
    bool ok = true;
    std::string detail;
    for (const Eigen::MatrixXd& g : {Eigen::MatrixXd(Eigen::MatrixXd::Zero(1, 1)), mixed}) {
        const int D = 4;
        const OperatorGrid op = build_operators(g, D);
        const auto psi = deficiency_constraints(op);
        const PerturbFunctions pf = find_f1_f2(op, psi, D, grid);
        double orth = 0.0;
        for (const auto& p : psi)
            for (const TrigPoly* t : {&pf.f1, &pf.f2}) {
                double s = 0.0;
                for (std::size_t i = 0; i < t->coeffs().size(); ++i)
                    s += t->coeffs()[i] * p[static_cast<Eigen::Index>(i)];
                orth = std::max(orth, std::abs(s) / p.norm());
            }
        const DecomposedSampler ds(op, pf, N, grid);
        const PerturbedSampler direct(KernelSpec::perturbed(g), N, grid);
        const std::size_t R = 10000;
        const std::size_t lags[] = {0, 3, 10, 40, 128};
        int bad_lags = 0;
        double worst_z = 0.0;
        const auto draws = kernels::parallel::replica_map(R, 0, [&](std::size_t r) {
            Rng r1(derive_seed(10, stream::hypotheses, r)), r2(derive_seed(11, stream::hypotheses, r));
            const auto d = ds.sample(r1);
            const FieldSample s = direct.sample(r2);
            std::vector<double> out;
            for (std::size_t l : lags) {
                out.push_back(d.full.values[7] * d.full.values[(7 + l) % grid.M]);
                out.push_back(s.values[7] * s.values[(7 + l) % grid.M]);
            }
            return out;
        });
        for (std::size_t k = 0; k < 5; ++k) {
            std::vector<double> a(R), b(R);
            for (std::size_t r = 0; r < R; ++r) {
                a[r] = draws[r][2 * k];
                b[r] = draws[r][2 * k + 1];
            }
            const Estimate ea = mean_estimate(a), eb = mean_estimate(b);
            const double z = std::abs(ea.value - eb.value) / std::hypot(ea.se, eb.se);
            worst_z = std::max(worst_z, z);
            bad_lags += z < 4.0 ? 0 : 1;
        }
        const bool this_ok = pf.A_inf > 0.0 && pf.residual_min_eig >= -1e-8 && orth < 1e-10 &&
                             bad_lags == 0;
        ok = ok && this_ok;
        detail += f("[l=%.0f A_inf=%.3f resid_min_eig=%.1e orth=%.1e ", static_cast<double>(psi.size()),
                    pf.A_inf, pf.residual_min_eig, orth) +
                  f("cov max |z|=%.2f (< 4)] ", worst_z);
    }
    return {ok, detail};
}

Outcome ac11()
{
    const GridSpec grid = GridSpec::circle(4096);
    const int N = 1024;
    const double gamma = 1.0;
    Eigen::MatrixXd mixed = Eigen::MatrixXd::Zero(5, 5);
    mixed(0, 0) = 0.2;
    mixed(1, 1) = -1.0;
    mixed(3, 3) = 0.1;
    mixed(2, 4) = mixed(4, 2) = 0.05;
    std::size_t violations = 0, balls = 0;
    double margins[4] = {INFINITY, INFINITY, INFINITY, INFINITY};
    for (int kind = 0; kind < 2; ++kind) {
        const Eigen::MatrixXd g = kind == 0 ? Eigen::MatrixXd(Eigen::MatrixXd::Zero(1, 1)) : mixed;
        const OperatorGrid op = build_operators(g, 4);
        const PerturbFunctions pf = find_f1_f2(op, deficiency_constraints(op), 4, grid);
        const DecomposedSampler ds(op, pf, N, grid);
        const double kappa = gamma * gamma * pf.effective_A_inf(grid);
        const double K = gamma * pf.effective_sup(grid);
        const auto reports = kernels::parallel::replica_map(10, 0, [&](std::size_t r) {
            Rng rng(derive_seed(11, stream::hypotheses, 100 * kind + r));
            const auto d = ds.sample(rng);
            const cplx z = std::polar(rng.uniform(0.0, 0.99), rng.uniform(0.0, 2 * pi));
            const UFunction u = build_u(build_measure(d.residual, gamma), z, pf, gamma);
            HypothesisOptions opt;
            opt.seed = derive_seed(11, stream::hypotheses, 1000 + 100 * kind + r);
            return check_hypotheses(u, kappa, K, opt);
        });
        for (const auto& rep : reports) {
            violations += rep.violations.size();
            balls += rep.balls;
            for (int i = 0; i < 4; ++i)
                margins[i] = std::min(margins[i], rep.min_margin[i]);
        }
    }
    return {violations == 0,
            f("20 replicas, %.0f balls, violations %.0f; min margins convexity %.2e, ",
              static_cast<double>(balls), static_cast<double>(violations), margins[0]) +
                f("laplacian %.2e, gradient %.2e, ball %.2e", margins[1], margins[2], margins[3])};
}

std::string strip_wall_time(const std::string& jsonl)
{
    static const std::regex wt("\"wall_time\":[^,}]*");
    return std::regex_replace(jsonl, wt, "\"wall_time\":0");
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome ac12()
{
    namespace fs = std::filesystem;
    const fs::path base = fs::temp_directory_path() / "gmc_acceptance_ac12";
    fs::remove_all(base);
    int differing = 0, compared = 0;
    for (const auto& name : experiment_names()) {
        ExperimentConfig c = default_config(name);
        // Same code paths at reduced size.
        c.replicas = std::min<std::size_t>(c.replicas, name == "zero-density" ? 8 : 120);
        if (name == "zero-density") {
            c.N_schedule = {256};
            c.M = 1024;
            c.radii = {0.875, 0.9375, 0.96875};
        } else if (name != "seiberg") {
            c.N_schedule = {1024};
            c.M = 4096;
        } else {
            c.N_schedule = {128, 256, 512};
            c.M = 2048;
        }
        std::vector<std::string> texts[2];
        for (int w : {1, 3}) {
            c.workers = w;
            const auto paths = write_result(run_experiment(name, c), base / ("w" + std::to_string(w)));
            for (const auto& p : paths)
                texts[w == 1 ? 0 : 1].push_back(p.extension() == ".jsonl" ? strip_wall_time(slurp(p))
                                                                           : slurp(p));
        }
        for (std::size_t i = 0; i < texts[0].size(); ++i) {
            ++compared;
            differing += texts[0][i] == texts[1][i] ? 0 : 1;
        }
    }
    fs::remove_all(base);
    return {differing == 0 && compared == 14,
            f("%.0f result files compared between 1 and 3 workers, %.0f differ (wall_time excluded)",
              compared, differing)};
}

}  // namespace

int main(int argc, char** argv)
{
    int only = 0;
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc)
            only = std::atoi(argv[++i]);

    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"deterministic Clark oracles", ac1},
        {"synthetic Blaschke zero recovery", ac2},
        {"canonical lag-pi covariance", ac3},
        {"mass-moment exponent", ac4},
        {"Poisson-moment exponent", ac5},
        {"log(1/|phi|) exponent", ac6},
        {"zero-density phase transition", ac7},
        {"Seiberg threshold", ac8},
        {"multifractal count", ac9},
        {"rank-two decomposition", ac10},
        {"hypotheses of the u-function", ac11},
        {"reproducibility across worker counts", ac12},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        if (only && static_cast<int>(i) + 1 != only)
            continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("AC%-2zu %s  %-38s %s  [%.1f s]\n", i + 1, o.pass ? "PASS" : "FAIL",
                    criteria[i].first, o.detail.c_str(), secs);
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}
