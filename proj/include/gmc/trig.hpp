#pragma once

#include "gmc/grid.hpp"

#include <cstddef>
#include <vector>

namespace gmc {

// Real trigonometric basis: e_0 = 1, e_{2j-1} = sin(j t), e_{2j} = cos(j t).
double trig_basis(std::size_t index, double theta);
int trig_degree_of_index(std::size_t index);
// Writes e_0..e_{2D}(theta) into out[0..2D].
void trig_basis_values(int D, double theta, double* out);

class TrigPoly {
public:
    TrigPoly() : coeffs_(1, 0.0) {}
    explicit TrigPoly(std::vector<double> coeffs);

    static TrigPoly zero(int degree) { return TrigPoly(std::vector<double>(2 * degree + 1, 0.0)); }

    int degree() const { return static_cast<int>(coeffs_.size() / 2); }
    const std::vector<double>& coeffs() const { return coeffs_; }
    double operator()(double theta) const;
    std::vector<double> on_grid(const GridSpec& grid) const;
    double norm() const;

private:
    std::vector<double> coeffs_;
};

}  // namespace gmc
