#pragma once

#include <cstddef>

namespace gmc {

enum class Domain { circle, interval };

// Uniform grid: theta_j = 2*pi*j/M on the circle, x_j = -1/2 + (j + 1/2)/M on
// [-1/2, 1/2]. M must be a power of two, at least 8.
struct GridSpec {
    std::size_t M = 0;
    Domain domain = Domain::circle;

    static GridSpec circle(std::size_t M);
    static GridSpec interval(std::size_t M);

    double spacing() const;
    double point(std::size_t j) const;
    // Total length of the domain (2*pi or 1).
    double length() const;
};

bool is_power_of_two(std::size_t n);

}  // namespace gmc
