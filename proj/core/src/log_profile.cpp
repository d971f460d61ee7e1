#include <cmath>

#include "kpp/errors.hpp"
#include "kpp/oscillation.hpp"

namespace kpp::osc {

double LogProfile::delayed_x(std::size_t i) const {
    const auto j = static_cast<std::ptrdiff_t>(i) - static_cast<std::ptrdiff_t>(delay_steps);
    if (j >= 0) return x[static_cast<std::size_t>(j)];
    return -std::log(left_amplitude) - decay_rate * static_cast<double>(j) * grid.step;
}

LogProfile to_log_coordinates(const wave::ProfileSolution& sol) {
    const std::size_t n = sol.phi.size();
    if (n < 3 || sol.grid.n != n) {
        throw PreconditionError("profile needs at least three samples on its grid");
    }
    LogProfile lp;
    lp.grid = sol.grid;
    lp.params = sol.params;
    lp.delay_steps = sol.delay_steps;
    lp.left_amplitude = sol.left_amplitude;
    lp.decay_rate = sol.decay_rate;

    lp.x.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(sol.phi[i] > 0.0)) {
            throw PreconditionError("log coordinates need phi > 0 (violated at t = " +
                                    std::to_string(sol.grid.at(i)) + ")");
        }
        lp.x[i] = -std::log(sol.phi[i]);
    }

    const double s = sol.grid.step;
    lp.y.resize(n);
    lp.y[0] = (-3.0 * lp.x[0] + 4.0 * lp.x[1] - lp.x[2]) / (2.0 * s);
    for (std::size_t i = 1; i + 1 < n; ++i) lp.y[i] = (lp.x[i + 1] - lp.x[i - 1]) / (2.0 * s);
    lp.y[n - 1] = (3.0 * lp.x[n - 1] - 4.0 * lp.x[n - 2] + lp.x[n - 3]) / (2.0 * s);

    lp.g.resize(n);
    for (std::size_t i = 0; i < n; ++i) lp.g[i] = std::expm1(-lp.delayed_x(i));
    return lp;
}

}  // namespace kpp::osc
