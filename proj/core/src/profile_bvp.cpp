#include "kpp/wave_profiles.hpp"

#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>

#include "kpp/errors.hpp"
#include "kpp/spectral.hpp"

namespace kpp::wave {

namespace {

using SparseMatrix = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

// Discrete operator on a fixed grid. Unknowns are phi_1 .. phi_{n-1};
// phi_0 is pinned to the left amplitude.
class Discretization {
public:
    Discretization(const ModelParams& p, const Grid1D& grid, std::size_t delay_steps,
                   double left_amplitude, double decay_rate)
        : c_(p.c()),
          grid_(grid),
          m_(delay_steps),
          eps0_(left_amplitude),
          lambda_(decay_rate),
          inv_s2_(1.0 / (grid.step * grid.step)),
          adv_(p.c() / (2.0 * grid.step)) {}

    double extension(std::ptrdiff_t i) const {
        return eps0_ * std::exp(lambda_ * static_cast<double>(i) * grid_.step);
    }

    double delayed(const std::vector<double>& phi, std::size_t i) const {
        const auto j = static_cast<std::ptrdiff_t>(i) - static_cast<std::ptrdiff_t>(m_);
        return j >= 0 ? phi[static_cast<std::size_t>(j)] : extension(j);
    }

    void residual(const std::vector<double>& phi, std::vector<double>& out) const {
        const std::size_t n = grid_.n;
        out.assign(n, 0.0);
        for (std::size_t i = 1; i < n; ++i) {
            const double left = phi[i - 1];
            const double right = (i + 1 < n) ? phi[i + 1] : phi[i - 1];
            out[i] = (right - 2.0 * phi[i] + left) * inv_s2_ - adv_ * (right - left) +
                     phi[i] * (1.0 - delayed(phi, i));
        }
    }

    SparseMatrix jacobian(const std::vector<double>& phi) const {
        const std::size_t n = grid_.n;
        const auto dim = static_cast<Eigen::Index>(n - 1);
        std::vector<Triplet> entries;
        entries.reserve(4 * n);
        const double lower = inv_s2_ + adv_;
        const double upper = inv_s2_ - adv_;
        for (std::size_t i = 1; i < n; ++i) {
            const auto row = static_cast<Eigen::Index>(i - 1);
            double diag = -2.0 * inv_s2_ + 1.0;
            if (m_ == 0) {
                diag -= 2.0 * phi[i];
            } else {
                diag -= delayed(phi, i);
                if (i > m_) {
                    entries.emplace_back(row, static_cast<Eigen::Index>(i - m_ - 1), -phi[i]);
                }
            }
            entries.emplace_back(row, row, diag);
            if (i + 1 < n) {
                entries.emplace_back(row, row + 1, upper);
                if (i > 1) entries.emplace_back(row, row - 1, lower);
            } else {
                // Neumann ghost node phi_n = phi_{n-2}.
                entries.emplace_back(row, row - 1, lower + upper);
            }
        }
        SparseMatrix jac(dim, dim);
        jac.setFromTriplets(entries.begin(), entries.end());
        jac.makeCompressed();
        return jac;
    }

private:
    double c_;
    Grid1D grid_;
    std::size_t m_;
    double eps0_;
    double lambda_;
    double inv_s2_;
    double adv_;
};

double inf_norm(const std::vector<double>& v) {
    double out = 0.0;
    for (double x : v) out = std::max(out, std::abs(x));
    return out;
}

struct NewtonOutcome {
    double residual;
    int iterations;
    bool converged;
};

NewtonOutcome newton_solve(const Discretization& disc, std::vector<double>& phi,
                           const NewtonConfig& cfg) {
    std::vector<double> res;
    std::vector<double> trial;
    std::vector<double> trial_res;
    disc.residual(phi, res);
    double norm = inf_norm(res);

    Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
    bool analyzed = false;
    int it = 0;
    for (; it < cfg.max_iterations && norm >= cfg.tolerance; ++it) {
        const SparseMatrix jac = disc.jacobian(phi);
        if (!analyzed) {
            lu.analyzePattern(jac);
            analyzed = true;
        }
        lu.factorize(jac);
        if (lu.info() != Eigen::Success) {
            return {norm, it, false};
        }
        Eigen::VectorXd rhs(static_cast<Eigen::Index>(phi.size() - 1));
        for (std::size_t i = 1; i < phi.size(); ++i) rhs[static_cast<Eigen::Index>(i - 1)] = -res[i];
        const Eigen::VectorXd delta = lu.solve(rhs);
        if (lu.info() != Eigen::Success || !delta.allFinite()) {
            return {norm, it, false};
        }

        double damping = 1.0;
        double trial_norm = norm;
        while (true) {
            trial = phi;
            for (std::size_t i = 1; i < phi.size(); ++i) {
                trial[i] += damping * delta[static_cast<Eigen::Index>(i - 1)];
            }
            disc.residual(trial, trial_res);
            trial_norm = inf_norm(trial_res);
            if (trial_norm < (1.0 - 0.5 * damping) * norm || damping <= cfg.min_damping) break;
            damping *= 0.5;
        }
        phi.swap(trial);
        res.swap(trial_res);
        norm = trial_norm;
    }
    return {norm, it, norm < cfg.tolerance};
}

double choose_step(const ModelParams& p, const GridConfig& cfg) {
    if (cfg.step) {
        if (p.h() > 0.0) {
            Grid1D probe;
            probe.step = *cfg.step;
            probe.steps_in(p.h());
        }
        return *cfg.step;
    }
    if (p.h() == 0.0) return cfg.step_without_delay;
    if (cfg.steps_per_delay < 1) {
        throw PreconditionError("steps_per_delay must be positive");
    }
    return p.h() / cfg.steps_per_delay;
}

// Largest |phi - 1| over the final quarter of the grid and where it sits.
struct TailProbe {
    double amplitude;
    double position;
};

TailProbe probe_tail(const ProfileSolution& sol, double begin_fraction, double end_fraction) {
    const auto n = sol.grid.n;
    const auto lo = static_cast<std::size_t>(begin_fraction * static_cast<double>(n - 1));
    const auto hi = static_cast<std::size_t>(end_fraction * static_cast<double>(n - 1));
    TailProbe best{0.0, sol.grid.at(lo)};
    for (std::size_t i = lo; i <= hi; ++i) {
        const double a = std::abs(sol.phi[i] - 1.0);
        if (a > best.amplitude) best = {a, sol.grid.at(i)};
    }
    return best;
}

ProfileSolution solve_on(const ModelParams& p, const Grid1D& grid, std::size_t delay_steps,
                         const GridConfig& grid_cfg, const NewtonConfig& newton_cfg,
                         std::vector<double> phi, double decay_rate) {
    const Discretization disc(p, grid, delay_steps, grid_cfg.left_amplitude, decay_rate);
    phi[0] = grid_cfg.left_amplitude;
    const auto outcome = newton_solve(disc, phi, newton_cfg);

    ProfileSolution sol;
    sol.grid = grid;
    sol.params = p;
    sol.delay_steps = delay_steps;
    sol.left_amplitude = grid_cfg.left_amplitude;
    sol.decay_rate = decay_rate;
    sol.iterations = outcome.iterations;
    sol.residual_inf = outcome.residual;
    sol.positive = std::all_of(phi.begin(), phi.end(), [](double v) { return v > 0.0; });
    sol.converged = outcome.converged && sol.positive;

    const std::size_t n = grid.n;
    const double s = grid.step;
    sol.dphi.assign(n, 0.0);
    sol.dphi[0] = (-3.0 * phi[0] + 4.0 * phi[1] - phi[2]) / (2.0 * s);
    for (std::size_t i = 1; i + 1 < n; ++i) sol.dphi[i] = (phi[i + 1] - phi[i - 1]) / (2.0 * s);
    sol.dphi[n - 1] = 0.0;
    sol.phi = std::move(phi);
    return sol;
}

}  // namespace

double ProfileSolution::delayed(std::size_t i) const {
    const auto j = static_cast<std::ptrdiff_t>(i) - static_cast<std::ptrdiff_t>(delay_steps);
    if (j >= 0) return phi[static_cast<std::size_t>(j)];
    return left_amplitude * std::exp(decay_rate * static_cast<double>(j) * grid.step);
}

ProfileSolution solve_profile_bvp(const ModelParams& p, const GridConfig& grid_cfg,
                                  const NewtonConfig& newton_cfg) {
    if (!(grid_cfg.left_length > 0.0) || !(grid_cfg.left_amplitude > 0.0) ||
        !(grid_cfg.left_amplitude < 0.5)) {
        throw PreconditionError("left_length must be positive and left_amplitude in (0, 1/2)");
    }
    const double step = choose_step(p, grid_cfg);
    const double decay_rate = spectral::decay_rates(p).slow;

    const bool auto_right = !grid_cfg.right_length.has_value();
    double right = auto_right ? 40.0 * std::max(1.0, p.h()) : *grid_cfg.right_length;
    if (!(right > 0.0)) throw PreconditionError("right_length must be positive");

    Grid1D grid = Grid1D::covering(-grid_cfg.left_length, right, step);
    const std::size_t delay_steps = p.h() > 0.0 ? grid.steps_in(p.h()) : 0;
    if (grid.n < delay_steps + 3) {
        throw PreconditionError("profile domain shorter than the delay");
    }

    // Logistic guess with the left growth rate, centred where the left
    // extension would reach 1/2.
    const double centre = -grid_cfg.left_length + std::log(0.5 / grid_cfg.left_amplitude) / decay_rate;
    std::vector<double> guess(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) {
        guess[i] = 1.0 / (1.0 + std::exp(-decay_rate * (grid.at(i) - centre)));
    }

    ProfileSolution sol = solve_on(p, grid, delay_steps, grid_cfg, newton_cfg, std::move(guess), decay_rate);
    if (!auto_right) return sol;

    for (int ext = 0; ext < grid_cfg.max_extensions && sol.converged; ++ext) {
        const auto late = probe_tail(sol, 0.75, 0.97);
        if (late.amplitude <= grid_cfg.tail_amplitude) break;
        if (sol.grid.t_max >= grid_cfg.max_right_length) break;
        const auto early = probe_tail(sol, 0.5, 0.75);
        const double span = late.position - early.position;
        if (!(early.amplitude > late.amplitude) || span <= 0.0) break;
        const double rate = std::log(early.amplitude / late.amplitude) / span;
        double target = late.position + std::log(late.amplitude / grid_cfg.tail_amplitude) / rate +
                        10.0 * std::max(1.0, p.h());
        target = std::min(target, grid_cfg.max_right_length);
        if (target <= sol.grid.t_max) break;

        Grid1D longer = Grid1D::covering(sol.grid.t_min, target, step);
        std::vector<double> extended(longer.n, 1.0);
        std::copy(sol.phi.begin(), sol.phi.end(), extended.begin());
        ProfileSolution next = solve_on(p, longer, delay_steps, grid_cfg, newton_cfg,
                                        std::move(extended), decay_rate);
        next.extensions = sol.extensions + 1;
        next.iterations += sol.iterations;
        sol = std::move(next);
    }
    return sol;
}

std::vector<double> bvp_residual_vector(const ProfileSolution& sol) {
    const Discretization disc(sol.params, sol.grid, sol.delay_steps, sol.left_amplitude,
                              sol.decay_rate);
    std::vector<double> out;
    disc.residual(sol.phi, out);
    return out;
}

double bvp_residual(const ProfileSolution& sol) { return inf_norm(bvp_residual_vector(sol)); }

std::optional<double> first_crossing(const ProfileSolution& sol, double level) {
    for (std::size_t i = 0; i + 1 < sol.phi.size(); ++i) {
        const double a = sol.phi[i];
        const double b = sol.phi[i + 1];
        if (a < level && b >= level) {
            return sol.grid.at(i) + (level - a) / (b - a) * sol.grid.step;
        }
    }
    return std::nullopt;
}

}  // namespace kpp::wave
