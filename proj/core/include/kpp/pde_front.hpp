#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "kpp/params.hpp"
#include "kpp/wave_profiles.hpp"

/// Method-of-lines simulation of u_t = u_xx + u (1 - u(t - tau, x)) on [0, X].
namespace kpp::wave {

enum class InitialData {
    Step,  ///< u = 1 for x <= step_position, 0 beyond
    Zero,  ///< u = 0
};

struct SimConfig {
    double length = 700.0;
    double dx = 0.1;
    double step_position = 20.0;
    double t_end = 300.0;
    double sample_interval = 0.5;
    /// dt <= stability_factor * dx^2.
    double stability_factor = 0.4;
    /// Optional explicit time step; rejected if it violates the bound.
    double dt = 0.0;
    InitialData initial = InitialData::Step;
    /// Times (besides t_end) at which the full field is kept.
    std::vector<double> snapshot_times;
};

/// Field plus ring buffer of the past delay window.
struct PdeState {
    double dx = 0.0;
    std::size_t nx = 0;
    double dt = 0.0;
    double t_now = 0.0;
    std::vector<double> u;
    /// delay_steps + 1 snapshots covering [t - tau, t]; history[head] is the oldest.
    std::vector<std::vector<double>> history;
    std::size_t head = 0;
    std::size_t delay_steps = 0;

    double x_at(std::size_t i) const noexcept { return static_cast<double>(i) * dx; }
};

struct FrontSample {
    double t;
    double position;
};

struct Snapshot {
    double t;
    std::vector<double> u;
};

struct PdeRun {
    ModelParams params{2.0, 0.0};
    SimConfig config;
    PdeState state;
    std::vector<FrontSample> front;
    std::vector<Snapshot> snapshots;
    double min_value = 0.0;
};

/// Largest x at which u crosses 1/2 (linear interpolation); nullopt if u
/// stays on one side.
std::optional<double> front_position(const std::vector<double>& u, double dx, double level = 0.5);

/// Explicit RK4 with the three-point Laplacian and Neumann ends. The delayed
/// field is read from the ring buffer by exact index at the step ends; the
/// half-step stages use the mean of the two bracketing snapshots. Throws
/// PreconditionError for X < 400 or an explicit dt above the stability
/// bound, ConsistencyError on NaN or negative values.
PdeRun simulate_pde_front(const ModelParams& p, const SimConfig& cfg = {});

struct SpeedFit {
    double speed = 0.0;
    double intercept = 0.0;
    double rms_residual = 0.0;
    std::size_t samples = 0;
};

/// Least-squares slope over the final third of the series. Throws
/// PreconditionError with fewer than 10 samples in that window.
SpeedFit measure_front_speed(const std::vector<FrontSample>& series);

/// PDE field in the co-moving frame: u(t, X_f - xi), so that xi increases
/// into the invaded region and xi = 0 is the 1/2 crossing.
struct ComovingProfile {
    double time = 0.0;
    double front = 0.0;
    std::vector<double> xi;
    std::vector<double> u;
};

struct ComovingWindow {
    double xi_min = -20.0;
    double xi_max = 60.0;
    double step = 0.05;
};

/// Throws PreconditionError when no snapshot is stored at `at_time` or no
/// front is present.
ComovingProfile extract_comoving_profile(const PdeRun& run, double at_time,
                                         const ComovingWindow& window = {});

/// Max-norm distance between the BVP profile (shifted so its first 1/2
/// crossing sits at 0) and the co-moving PDE profile over xi in [xi_min, xi_max],
/// restricted to the BVP domain.
double profile_distance(const ProfileSolution& bvp, const ComovingProfile& pde, double xi_min,
                        double xi_max);

/// phi on the co-moving window, shifted the same way as profile_distance.
/// Outside the BVP domain the left extension and phi(t_max) are used.
ComovingProfile sample_aligned(const ProfileSolution& bvp, const ComovingWindow& window);

/// Height above 1 of the first local maximum exceeding 1; 0 if none.
double first_overshoot(const std::vector<double>& values);

}  // namespace kpp::wave
