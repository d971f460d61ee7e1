#pragma once

#include <optional>
#include <vector>

#include "kpp/grid.hpp"
#include "kpp/params.hpp"

namespace kpp::wave {

/// Truncated domain [-left_length, right_length] for the profile equation.
struct GridConfig {
    double left_length = 60.0;
    /// Unset: start from 40 * max(1, h) and extend until the oscillation
    /// about 1 has decayed below tail_amplitude (or max_right_length).
    std::optional<double> right_length;
    /// Explicit step; must divide h. Unset: h / steps_per_delay.
    std::optional<double> step;
    int steps_per_delay = 64;
    /// Step used when h == 0.
    double step_without_delay = 1.0 / 32.0;
    double left_amplitude = 1e-6;
    double tail_amplitude = 1e-8;
    double max_right_length = 4000.0;
    int max_extensions = 3;
};

struct NewtonConfig {
    double tolerance = 1e-10;
    int max_iterations = 50;
    double min_damping = 1.0 / 1024.0;
};

/// Sampled travelling profile phi on [t_min, t_max].
struct ProfileSolution {
    Grid1D grid;
    std::vector<double> phi;
    std::vector<double> dphi;
    ModelParams params{2.0, 0.0};
    std::size_t delay_steps = 0;
    double residual_inf = 0.0;
    bool converged = false;
    bool positive = true;
    int iterations = 0;
    int extensions = 0;
    /// phi(t_min); the left extension is left_amplitude * exp(decay_rate * (t - t_min)).
    double left_amplitude = 1e-6;
    double decay_rate = 1.0;

    /// phi(t_i - h), reading the left extension below the grid.
    double delayed(std::size_t i) const;
};

/// Damped Newton on the central-difference discretisation of
///   phi'' - c phi' + phi (1 - phi(t - h)) = 0
/// with phi(-L1) = left_amplitude and phi'(L2) = 0. Throws
/// PreconditionError when the step does not divide h. A solution that
/// fails to converge or loses positivity is returned with converged = false.
ProfileSolution solve_profile_bvp(const ModelParams& p, const GridConfig& grid_cfg = {},
                                  const NewtonConfig& newton_cfg = {});

/// Max-norm of the discrete operator over the interior nodes and the
/// right Neumann node.
double bvp_residual(const ProfileSolution& sol);

/// Residual at every node (zero at the Dirichlet node).
std::vector<double> bvp_residual_vector(const ProfileSolution& sol);

/// Position of the first upward crossing of `level`, linearly interpolated.
/// Returns nullopt when phi never reaches the level.
std::optional<double> first_crossing(const ProfileSolution& sol, double level = 0.5);

}  // namespace kpp::wave
