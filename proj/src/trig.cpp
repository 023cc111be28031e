#include "gmc/trig.hpp"

#include "gmc/errors.hpp"

#include <cmath>

namespace gmc {

int trig_degree_of_index(std::size_t index) { return static_cast<int>((index + 1) / 2); }

double trig_basis(std::size_t index, double theta)
{
    if (index == 0)
        return 1.0;
    const double j = static_cast<double>(trig_degree_of_index(index));
    return (index % 2 == 1) ? std::sin(j * theta) : std::cos(j * theta);
}

void trig_basis_values(int D, double theta, double* out)
{
    out[0] = 1.0;
    for (int j = 1; j <= D; ++j) {
        out[2 * j - 1] = std::sin(j * theta);
        out[2 * j] = std::cos(j * theta);
    }
}

TrigPoly::TrigPoly(std::vector<double> coeffs) : coeffs_(std::move(coeffs))
{
    if (coeffs_.size() % 2 == 0)
        throw ParameterError("trigonometric polynomial needs an odd number of coefficients");
}

double TrigPoly::operator()(double theta) const
{
    double sum = 0.0;
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        sum += coeffs_[i] * trig_basis(i, theta);
    return sum;
}

std::vector<double> TrigPoly::on_grid(const GridSpec& grid) const
{
    std::vector<double> out(grid.M);
    for (std::size_t j = 0; j < grid.M; ++j)
        out[j] = (*this)(grid.point(j));
    return out;
}

double TrigPoly::norm() const
{
    double s = 0.0;
    for (double c : coeffs_)
        s += c * c;
    return std::sqrt(s);
}

}  // namespace gmc
