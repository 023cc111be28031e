#pragma once

#include "gmc/clark.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace gmc {

// Finite Blaschke product prod (|a|/a)(a - z)/(1 - conj(a) z), with factor z
// for a = 0. Test oracle for the zero finder.
class BlaschkeProduct : public AnalyticSelfMap {
public:
    explicit BlaschkeProduct(std::vector<cplx> zeros);

    cplx value(cplx z) const override;
    std::pair<cplx, cplx> value_and_derivative(cplx z) const override;
    const std::vector<cplx>& zeros() const { return zeros_; }

private:
    std::vector<cplx> zeros_;
};

BlaschkeProduct make_blaschke(std::vector<cplx> zeros);

struct Zero {
    cplx z;
    int multiplicity = 1;
};

struct ZeroSet {
    std::vector<Zero> zeros;
    double r_max = 0.0;
    // (k, number of zeros with 1 - |z| in (2^-(k+1), 2^-k]), multiplicity counted.
    std::vector<std::pair<int, int>> annulus_counts;
    // False when the evaluation budget ran out before every cell was resolved.
    bool complete = true;
    std::size_t evaluations = 0;

    int total_multiplicity() const;
};

std::vector<std::pair<int, int>> annulus_counts(const std::vector<Zero>& zeros);

// Winding number of f around |z| = r. The radius is nudged by +-1e-4 (up to
// 8 times) when the contour passes within 1e-6 of a zero of f.
int count_zeros(const AnalyticSelfMap& f, double r);

struct ContourCount {
    int count = 0;
    double radius = 0.0;  // radius actually used after nudging
    std::size_t evaluations = 0;
};
ContourCount count_zeros_detail(const AnalyticSelfMap& f, double r);

ZeroSet locate_zeros(const AnalyticSelfMap& f, double r_max,
                     std::size_t resolution_budget = 4'000'000);

// Zeros with |z| <= r, with annulus counts recomputed.
ZeroSet restrict_zeros(const ZeroSet& zs, double r);

double beta_sum(const ZeroSet& zs, double beta);

// Integral over |z| <= r_max of (1 - |z|^2)^(beta - 2) log(1/|f(z)|) dA.
double area_functional(const AnalyticSelfMap& f, double beta, double r_max);

}  // namespace gmc
