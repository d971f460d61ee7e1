#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "kpp/errors.hpp"
#include "kpp/oscillation.hpp"
#include "kpp/pde_front.hpp"
#include "kpp/wave_profiles.hpp"

using namespace kpp;
using namespace kpp::wave;

namespace {

ProfileSolution constant_profile(double value, double tau) {
    ProfileSolution s;
    s.params = ModelParams(2.0, tau);
    s.grid = Grid1D::covering(-10.0, 10.0, 0.125);
    s.phi.assign(s.grid.n, value);
    s.dphi.assign(s.grid.n, 0.0);
    s.delay_steps = s.params.h() > 0 ? s.grid.steps_in(s.params.h()) : 0;
    s.left_amplitude = value;
    s.decay_rate = 0.0;
    return s;
}

SimConfig small_sim(double t_end) {
    SimConfig cfg;
    cfg.length = 400.0;
    cfg.dx = 0.2;
    cfg.t_end = t_end;
    return cfg;
}

}  // namespace

TEST(BvpResidual, ConstantEquilibria) {
    EXPECT_EQ(bvp_residual(constant_profile(1.0, 0.0)), 0.0);
    EXPECT_EQ(bvp_residual(constant_profile(1.0, 1.5)), 0.0);
    const auto r = bvp_residual_vector(constant_profile(0.5, 0.0));
    EXPECT_EQ(r.front(), 0.0);
    for (std::size_t i = 1; i < r.size(); ++i) EXPECT_DOUBLE_EQ(r[i], 0.25);
    EXPECT_EQ(bvp_residual(constant_profile(0.0, 1.0)), 0.0);
}

TEST(BvpSolver, MonotoneFrontWithoutDelay) {
    const auto sol = solve_profile_bvp(ModelParams(2.5, 0.0));
    ASSERT_TRUE(sol.converged);
    EXPECT_LT(sol.residual_inf, 1e-10);
    EXPECT_LT(bvp_residual(sol), 1e-10);
    EXPECT_DOUBLE_EQ(sol.phi.front(), sol.left_amplitude);
    for (std::size_t i = 1; i < sol.phi.size(); ++i) EXPECT_GE(sol.phi[i], sol.phi[i - 1] - 1e-12);
    EXPECT_NEAR(sol.phi.back(), 1.0, 1e-6);
}

TEST(BvpSolver, OscillatingFrontAtCriticalDelay) {
    const auto sol = solve_profile_bvp(ModelParams(2.0, 1.5));
    ASSERT_TRUE(sol.converged);
    EXPECT_TRUE(sol.positive);
    EXPECT_LT(sol.residual_inf, 1e-10);
    EXPECT_GT(*std::max_element(sol.phi.begin(), sol.phi.end()), 1.1);
    EXPECT_EQ(sol.delay_steps, 64u);
    EXPECT_NEAR(std::abs(sol.phi.back() - 1.0), 0.0, 1e-6);
    EXPECT_GT(first_overshoot(sol.phi), 0.1);
}

TEST(BvpSolver, RejectsStepNotDividingDelay) {
    GridConfig g;
    g.step = 0.07;
    EXPECT_THROW(solve_profile_bvp(ModelParams(2.0, 1.5), g), PreconditionError);
    g.step = 3.0 / 50.0;
    EXPECT_NO_THROW(solve_profile_bvp(ModelParams(2.0, 1.5), g));
}

TEST(BvpSolver, FixedRightLengthIsKept) {
    GridConfig g;
    g.right_length = 50.0;
    const auto sol = solve_profile_bvp(ModelParams(3.0, 0.5), g);
    EXPECT_TRUE(sol.converged);
    EXPECT_NEAR(sol.grid.t_max, 50.0, sol.grid.step);
    EXPECT_EQ(sol.extensions, 0);
}

TEST(BvpSolver, NonConvergenceIsReported) {
    NewtonConfig n;
    n.max_iterations = 1;
    const auto sol = solve_profile_bvp(ModelParams(2.0, 1.5), {}, n);
    EXPECT_FALSE(sol.converged);
    EXPECT_GT(sol.residual_inf, 1e-10);
}

TEST(BvpSolver, PositiveAcrossParameters) {
    for (double c : {2.0, 3.0, 5.0}) {
        for (double tau : {0.0, 0.7, 1.2, 1.5}) {
            const auto sol = solve_profile_bvp(ModelParams(c, tau));
            EXPECT_TRUE(sol.converged) << c << " " << tau;
            EXPECT_GT(*std::min_element(sol.phi.begin(), sol.phi.end()), 0.0) << c << " " << tau;
        }
    }
}

TEST(BvpSolver, EventuallyMonotoneForSmallDelay) {
    for (double tau : {0.0, 0.5}) {
        const auto sol = solve_profile_bvp(ModelParams(2.0, tau));
        const auto half = first_crossing(sol);
        ASSERT_TRUE(half.has_value());
        for (std::size_t i = 0; i < sol.phi.size(); ++i) {
            if (sol.grid.at(i) > *half) {
                EXPECT_GT(sol.dphi[i], -1e-12) << "tau=" << tau << " t=" << sol.grid.at(i);
            }
        }
    }
}

TEST(BvpSolver, SecondOrderInStep) {
    const ModelParams p(2.0, 1.0);
    GridConfig g;
    g.right_length = 60.0;
    auto solve = [&](int per_delay) {
        g.steps_per_delay = per_delay;
        return solve_profile_bvp(p, g);
    };
    const auto ref = solve(256);
    auto error = [&](const ProfileSolution& s) {
        const std::size_t stride = (ref.grid.n - 1) / (s.grid.n - 1);
        double e = 0.0;
        for (std::size_t i = 0; i < s.grid.n; ++i) e = std::max(e, std::abs(s.phi[i] - ref.phi[i * stride]));
        return e;
    };
    const double e16 = error(solve(16));
    const double e32 = error(solve(32));
    EXPECT_NEAR(e16 / e32, 4.0, 0.6);
}

TEST(BvpSolver, FirstCrossingAndDelayedLookup) {
    auto s = constant_profile(0.25, 1.0);
    EXPECT_FALSE(first_crossing(s).has_value());
    for (std::size_t i = 0; i < s.grid.n; ++i) s.phi[i] = s.grid.at(i) < 0.0 ? 0.25 : 0.75;
    EXPECT_NEAR(*first_crossing(s), -0.0625, 1e-15);
    s.left_amplitude = 0.25;
    s.decay_rate = 1.0;
    EXPECT_NEAR(s.delayed(0), 0.25 * std::exp(-2.0), 1e-15);
    EXPECT_EQ(s.delayed(s.grid.n - 1), 0.75);
}

TEST(Pde, ZeroDataStaysZero) {
    auto cfg = small_sim(5.0);
    cfg.initial = InitialData::Zero;
    const auto run = simulate_pde_front(ModelParams(2.0, 1.0), cfg);
    for (double v : run.state.u) EXPECT_EQ(v, 0.0);
    EXPECT_TRUE(run.front.empty());
}

TEST(Pde, RejectsShortDomainAndLargeStep) {
    auto cfg = small_sim(5.0);
    cfg.length = 300.0;
    EXPECT_THROW(simulate_pde_front(ModelParams(2.0, 0.0), cfg), PreconditionError);
    cfg = small_sim(5.0);
    cfg.dt = 0.5 * cfg.dx * cfg.dx;
    EXPECT_THROW(simulate_pde_front(ModelParams(2.0, 0.0), cfg), PreconditionError);
}

TEST(Pde, DelayIsWholeNumberOfSteps) {
    const auto run = simulate_pde_front(ModelParams(2.0, 1.5), small_sim(3.0));
    EXPECT_LE(run.state.dt, 0.4 * 0.04 + 1e-15);
    EXPECT_NEAR(static_cast<double>(run.state.delay_steps) * run.state.dt, 1.5, 1e-12);
    EXPECT_EQ(run.state.history.size(), run.state.delay_steps + 1);
}

TEST(Pde, SpreadingSpeedWithoutDelay) {
    const auto run = simulate_pde_front(ModelParams(2.0, 0.0), small_sim(150.0));
    EXPECT_GE(run.min_value, -1e-12);
    const auto fit = measure_front_speed(run.front);
    EXPECT_NEAR(fit.speed, 2.0, 0.04);
}

TEST(Pde, ComovingAlignment) {
    const auto run = simulate_pde_front(ModelParams(2.0, 1.0), small_sim(60.0));
    const auto prof = extract_comoving_profile(run, run.state.t_now);
    const auto zero = std::find_if(prof.xi.begin(), prof.xi.end(), [](double x) { return std::abs(x) < 1e-9; });
    ASSERT_NE(zero, prof.xi.end());
    EXPECT_NEAR(prof.u[static_cast<std::size_t>(zero - prof.xi.begin())], 0.5, 1e-6);
    EXPECT_THROW(extract_comoving_profile(run, 17.3), PreconditionError);
}

TEST(Pde, OvershootMatchesProfileSolver) {
    const ModelParams p(2.0, 1.4);
    const auto run = simulate_pde_front(p);
    const auto pde = extract_comoving_profile(run, run.state.t_now);
    const auto bvp = sample_aligned(solve_profile_bvp(p), ComovingWindow{});
    const double a = first_overshoot(pde.u);
    const double b = first_overshoot(bvp.u);
    ASSERT_GT(b, 0.0);
    EXPECT_NEAR(a / b, 1.0, 0.05);
}

TEST(FrontSpeed, SyntheticSeries) {
    std::vector<FrontSample> lin, logt, flat;
    for (int i = 1; i <= 2000; ++i) {
        const double t = 0.5 * i;
        lin.push_back({t, 2.0 * t + 5.0});
        logt.push_back({t, 2.0 * t + std::log(t)});
        flat.push_back({t, 3.0});
    }
    EXPECT_NEAR(measure_front_speed(lin).speed, 2.0, 1e-12);
    EXPECT_NEAR(measure_front_speed(logt).speed, 2.0, 0.02);
    EXPECT_NEAR(measure_front_speed(flat).speed, 0.0, 1e-12);
    lin.resize(20);
    EXPECT_THROW(measure_front_speed(lin), PreconditionError);
}

TEST(FrontPosition, LargestCrossing) {
    std::vector<double> u{1.0, 1.0, 0.2, 0.8, 0.0, 0.0};
    EXPECT_NEAR(*front_position(u, 1.0), 3.375, 1e-15);
    EXPECT_FALSE(front_position(std::vector<double>(5, 0.1), 1.0).has_value());
}
