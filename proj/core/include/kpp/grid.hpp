#pragma once

#include <cstddef>

namespace kpp {

/// Uniform 1-D grid t_i = t_min + i * step, i = 0 .. n-1.
struct Grid1D {
    double t_min = 0.0;
    double t_max = 0.0;
    double step = 1.0;
    std::size_t n = 0;

    /// Smallest grid starting at t_min with the given step that reaches
    /// t_max; n = round((t_max - t_min) / step) + 1.
    static Grid1D covering(double t_min, double t_max, double step);

    double at(std::size_t i) const noexcept { return t_min + static_cast<double>(i) * step; }

    /// Number of steps spanning `length`. Throws PreconditionError unless the
    /// step divides it to 1e-9 relative accuracy.
    std::size_t steps_in(double length) const;
};

}  // namespace kpp
