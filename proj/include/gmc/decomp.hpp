#pragma once

#include "gmc/chaos.hpp"
#include "gmc/clark.hpp"
#include "gmc/field.hpp"
#include "gmc/trig.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

namespace gmc {

// Operators of the rank-two construction on the trig basis e_0..e_{2D}.
struct OperatorGrid {
    int D = 0;
    Eigen::VectorXd C;   // diag(0, 1, 1, 1/2, 1/2, ...)
    Eigen::VectorXd C1;  // C with the constant entry set to 1
    Eigen::MatrixXd A;   // g in the trig basis
    Eigen::MatrixXd T;   // C1^{-1/2} A C1^{-1/2}
    Eigen::VectorXd T_eigenvalues;   // ascending
    Eigen::MatrixXd T_eigenvectors;  // columns
    std::vector<std::string> warnings;

    Eigen::Index dimension() const { return 2 * D + 1; }
    Eigen::MatrixXd covariance() const;  // C + A
};

OperatorGrid build_operators(const Eigen::MatrixXd& g, int D);

// psi_j = C1^{-1/2} phi_j for eigenvectors phi_j of T with |lambda + 1| <= tol_eig.
std::vector<Eigen::VectorXd> deficiency_constraints(const OperatorGrid& op, double tol_eig = 1e-6);

// Orthonormal basis (columns) of ker(C + A).
Eigen::MatrixXd covariance_kernel(const OperatorGrid& op);

struct PerturbFunctions {
    TrigPoly f1, f2;  // unit coefficient norm
    double eps1 = 0.0, eps2 = 0.0;
    double A_inf = 0.0;            // min over the grid of f1^2 + f2^2
    double residual_min_eig = 0.0;
    Eigen::MatrixXd residual;  // C + A - (eps1/2) f1 f1^T - (eps2/2) f2 f2^T

    // sqrt(eps_i / 2) f_i: the functions multiplying V_i in X = V1 f1 + V2 f2 + X~.
    TrigPoly effective1() const;
    TrigPoly effective2() const;
    double effective_A_inf(const GridSpec& grid) const;
    double effective_sup(const GridSpec& grid) const;  // max sqrt(fh1^2 + fh2^2)
};

// Largest eps with (C + A) - eps f f^T >= -tol_psd, by bisection.
double largest_psd_eps(const Eigen::MatrixXd& K, const Eigen::VectorXd& f);

PerturbFunctions find_f1_f2(const OperatorGrid& op, const std::vector<Eigen::VectorXd>& constraints,
                            int D, const GridSpec& grid);

// X = V1 fh1 + V2 fh2 + X~ with X~ drawn from the residual kernel (plus the
// canonical modes D < n <= N).
class DecomposedSampler {
public:
    DecomposedSampler(const OperatorGrid& op, const PerturbFunctions& pf, int N,
                      const GridSpec& grid);

    struct Draw {
        double V1 = 0.0, V2 = 0.0;
        FieldSample residual;
        FieldSample full;
    };
    Draw sample(Rng& rng) const;
    const std::vector<double>& fhat1() const { return fh1_; }
    const std::vector<double>& fhat2() const { return fh2_; }

private:
    GridSpec grid_;
    int N_, D_;
    Eigen::MatrixXd basis_;  // grid x (2D+1)
    CovarianceSampler residual_;
    std::vector<double> fh1_, fh2_;
    std::vector<double> variance_;
    double tail_variance_;
};

// u(y1, y2) = sum_j a_j exp(y1 b1_j + y2 b2_j).
class UFunction {
public:
    UFunction(std::vector<double> a, std::vector<double> b1, std::vector<double> b2);

    struct Derivatives {
        double u, u1, u2, u11, u12, u22;
    };
    double operator()(double y1, double y2) const;
    Derivatives derivatives(double y1, double y2) const;

private:
    std::vector<double> a_, b1_, b2_;
};

// Weights of the residual chaos at its grid points, Poisson kernel at z.
UFunction build_u(const ChaosMeasure& residual, cplx z, const PerturbFunctions& pf, double gamma);

// (1/2pi) * integral over [-box, box]^2 of log(1 + 4u/(u-1)^2) exp(-gamma^2 |y|^2 / 2),
// midpoint rule on an n x n grid (the log singularity on {u = 1} is integrable).
double singular_integral(const UFunction& u, double gamma, double box = 6.0, int n = 480);

struct HypothesisViolation {
    std::string check;  // "convexity", "laplacian", "gradient", "ball"
    double y1 = 0.0, y2 = 0.0, r = 0.0;
    double lhs = 0.0, rhs = 0.0, margin = 0.0;
};

struct HypothesisReport {
    bool passed = true;
    std::vector<HypothesisViolation> violations;
    // Smallest relative margin seen per check (convexity, laplacian, gradient, ball).
    double min_margin[4] = {0, 0, 0, 0};
    std::size_t points = 0, balls = 0;
};

struct HypothesisOptions {
    double box = 3.0;
    int grid = 41;
    int balls = 50;
    std::uint64_t seed = 1;
    double slack = 1e-8;
};

HypothesisReport check_hypotheses(const UFunction& u, double kappa, double K,
                                  const HypothesisOptions& opt = {});

}  // namespace gmc
