#include "kpp/grid.hpp"

#include <cmath>
#include <string>

#include "kpp/errors.hpp"

namespace kpp {

Grid1D Grid1D::covering(double t_min, double t_max, double step) {
    if (!(step > 0.0) || !std::isfinite(step)) {
        throw PreconditionError("grid step must be positive and finite");
    }
    if (!(t_max > t_min)) {
        throw PreconditionError("grid needs t_max > t_min");
    }
    Grid1D g;
    g.t_min = t_min;
    g.step = step;
    g.n = static_cast<std::size_t>(std::llround((t_max - t_min) / step)) + 1;
    g.t_max = g.at(g.n - 1);
    return g;
}

std::size_t Grid1D::steps_in(double length) const {
    const double ratio = length / step;
    const double rounded = std::round(ratio);
    if (std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio)) {
        throw PreconditionError("grid step " + std::to_string(step) + " does not divide " +
                                std::to_string(length));
    }
    return static_cast<std::size_t>(rounded);
}

}  // namespace kpp
