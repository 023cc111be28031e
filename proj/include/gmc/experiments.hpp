#pragma once

#include "gmc/clark.hpp"
#include "gmc/stats.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace gmc {

struct ExperimentConfig {
    double gamma = 1.0;
    std::vector<int> N_schedule{4096};
    std::size_t M = 16384;
    std::size_t replicas = 2000;
    std::uint64_t master_seed = 20240601;
    // r values (x-moment, log-phi, imag-bound), r_max values (zero-density)
    // or eps values (multifractal, mass-scaling).
    std::vector<double> radii;
    double p = 0.5;
    std::vector<double> beta_list;
    std::vector<double> s_list;
    double delta = 0.1;
    int workers = 0;  // 0: OpenMP default
    int angles = 16;
    std::size_t interval_M = 1024;  // exact-scaling grid for mass-scaling
    double interval_eps_cells = 2.0;  // mollifier width in interval grid spacings
    int levels = 4;                   // dyadic shells R_0..R_levels

    int max_N() const;
    // Throws ConfigError on violated invariants.
    void validate(bool uses_moment) const;
};

struct ResultRow {
    std::string experiment;
    std::vector<std::pair<std::string, double>> params;
    double estimate = 0.0;
    double se = 0.0;
    std::size_t replicas = 0;
    std::uint64_t seed = 0;
    double wall_time = 0.0;  // seconds for the whole experiment
};

struct ExperimentResult {
    std::string name;
    std::vector<ResultRow> rows;
    // Fitted slopes, ratios and trend flags (flags are 0/1).
    std::vector<std::pair<std::string, double>> summary;

    double summary_value(const std::string& key) const;
    std::string summary_line() const;
};

const std::vector<std::string>& experiment_names();
ExperimentConfig default_config(const std::string& name);
ExperimentResult run_experiment(const std::string& name, const ExperimentConfig& cfg);

ExperimentResult exp_x_moment(const ExperimentConfig& cfg);
ExperimentResult exp_log_phi(const ExperimentConfig& cfg);
ExperimentResult exp_zero_density(const ExperimentConfig& cfg);
ExperimentResult exp_seiberg(const ExperimentConfig& cfg);
ExperimentResult exp_multifractal(const ExperimentConfig& cfg);
ExperimentResult exp_mass_scaling(const ExperimentConfig& cfg);
ExperimentResult exp_imag_bound(const ExperimentConfig& cfg);

// Mean over `angles` rotations of |Im h(r e^{i a})|^{-p}.
double imag_h_power(const InnerFunctionEval& f, double r, double p, int angles = 1);

// Trend helpers shared by the zero-density and Seiberg proxies.
bool bounded_trend(const std::vector<double>& v, double max_ratio);
bool growing_trend(const std::vector<double>& v, double min_increment);

}  // namespace gmc
