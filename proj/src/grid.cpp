#include "gmc/grid.hpp"

#include "gmc/errors.hpp"

#include <numbers>
#include <string>

namespace gmc {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

static GridSpec make(std::size_t M, Domain d)
{
    if (M < 8 || !is_power_of_two(M))
        throw ParameterError("grid size must be a power of two >= 8, got " + std::to_string(M));
    return GridSpec{M, d};
}

GridSpec GridSpec::circle(std::size_t M) { return make(M, Domain::circle); }
GridSpec GridSpec::interval(std::size_t M) { return make(M, Domain::interval); }

double GridSpec::length() const { return domain == Domain::circle ? 2.0 * std::numbers::pi : 1.0; }

double GridSpec::spacing() const { return length() / static_cast<double>(M); }

double GridSpec::point(std::size_t j) const
{
    const double m = static_cast<double>(M);
    if (domain == Domain::circle)
        return 2.0 * std::numbers::pi * static_cast<double>(j) / m;
    return -0.5 + (static_cast<double>(j) + 0.5) / m;
}

}  // namespace gmc
