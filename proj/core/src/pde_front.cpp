#include "kpp/pde_front.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kpp/errors.hpp"

namespace kpp::wave {

namespace {

constexpr double kMaxStability = 0.4;
// Field values below this are flushed to zero so the far field never
// becomes subnormal.
constexpr double kFlushBelow = 1e-250;
constexpr double kNegativeSlack = 1e-12;

double choose_dt(const ModelParams& p, const SimConfig& cfg, std::size_t& delay_steps) {
    const double bound = kMaxStability * cfg.dx * cfg.dx;
    if (cfg.stability_factor <= 0.0 || cfg.stability_factor > kMaxStability) {
        throw PreconditionError("stability_factor must lie in (0, 0.4]");
    }
    const double tau = p.tau();
    if (cfg.dt > 0.0) {
        if (cfg.dt > bound * (1.0 + 1e-12)) {
            throw PreconditionError("dt = " + std::to_string(cfg.dt) +
                                    " violates the explicit diffusion bound 0.4 dx^2");
        }
        if (tau > 0.0) {
            const double ratio = tau / cfg.dt;
            if (std::abs(ratio - std::round(ratio)) > 1e-9 * ratio) {
                throw PreconditionError("dt must divide the delay tau");
            }
            delay_steps = static_cast<std::size_t>(std::llround(ratio));
        }
        return cfg.dt;
    }
    const double target = cfg.stability_factor * cfg.dx * cfg.dx;
    if (tau == 0.0) return target;
    delay_steps = static_cast<std::size_t>(std::ceil(tau / target - 1e-12));
    return tau / static_cast<double>(delay_steps);
}

class MethodOfLines {
public:
    MethodOfLines(std::size_t nx, double dx) : nx_(nx), inv_dx2_(1.0 / (dx * dx)) {}

    // out = u_xx + u (1 - delayed) on [0, hi); `delayed` null means tau = 0.
    void rhs(const std::vector<double>& u, const double* delayed, std::vector<double>& out,
             std::size_t hi) const {
        const std::size_t last = nx_ - 1;
        for (std::size_t i = 0; i < hi; ++i) {
            double lap;
            if (i == 0) {
                lap = 2.0 * (u[1] - u[0]) * inv_dx2_;
            } else if (i == last) {
                lap = 2.0 * (u[last - 1] - u[last]) * inv_dx2_;
            } else {
                lap = (u[i + 1] - 2.0 * u[i] + u[i - 1]) * inv_dx2_;
            }
            out[i] = lap + u[i] * (1.0 - (delayed ? delayed[i] : u[i]));
        }
    }

private:
    std::size_t nx_;
    double inv_dx2_;
};

}  // namespace

std::optional<double> front_position(const std::vector<double>& u, double dx, double level) {
    for (std::size_t i = u.size() - 1; i > 0; --i) {
        const double right = u[i];
        const double left = u[i - 1];
        if ((left >= level) != (right >= level)) {
            return (static_cast<double>(i - 1) + (left - level) / (left - right)) * dx;
        }
    }
    return std::nullopt;
}

PdeRun simulate_pde_front(const ModelParams& p, const SimConfig& cfg) {
    if (cfg.length < 400.0) {
        throw PreconditionError("PDE domain length must be at least 400");
    }
    if (!(cfg.dx > 0.0) || !(cfg.t_end > 0.0) || !(cfg.sample_interval > 0.0)) {
        throw PreconditionError("dx, t_end and sample_interval must be positive");
    }

    PdeRun run;
    run.params = p;
    run.config = cfg;
    PdeState& st = run.state;
    st.dx = cfg.dx;
    st.nx = static_cast<std::size_t>(std::llround(cfg.length / cfg.dx)) + 1;
    st.dt = choose_dt(p, cfg, st.delay_steps);
    st.u.assign(st.nx, 0.0);
    if (cfg.initial == InitialData::Step) {
        for (std::size_t i = 0; i < st.nx; ++i) st.u[i] = st.x_at(i) <= cfg.step_position ? 1.0 : 0.0;
    }
    if (st.delay_steps > 0) {
        st.history.assign(st.delay_steps + 1, st.u);
    }

    const std::size_t nx = st.nx;
    const double dt = st.dt;
    const auto steps = static_cast<std::size_t>(std::llround(cfg.t_end / dt));
    const auto sample_every = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(cfg.sample_interval / dt)));
    const MethodOfLines mol(nx, st.dx);

    std::vector<double> k1(nx, 0.0), k2(nx, 0.0), k3(nx, 0.0), k4(nx, 0.0), stage(nx, 0.0),
        mid_delay(nx, 0.0);

    const auto support_end = [&](const std::vector<double>& u) {
        std::size_t last = nx;
        while (last > 0 && u[last - 1] == 0.0) --last;
        return std::min(nx, last + 8);
    };

    std::vector<double> snapshot_times = cfg.snapshot_times;
    const auto maybe_snapshot = [&](double t) {
        for (double ts : snapshot_times) {
            if (std::abs(t - ts) <= 0.5 * dt) run.snapshots.push_back({t, st.u});
        }
    };
    maybe_snapshot(0.0);

    double min_value = 0.0;
    for (std::size_t n = 0; n < steps; ++n) {
        const std::size_t hi = support_end(st.u);
        const double* d_start = nullptr;
        const double* d_end = nullptr;
        const double* d_mid = nullptr;
        if (st.delay_steps > 0) {
            const auto& oldest = st.history[st.head];
            const auto& next = st.history[(st.head + 1) % st.history.size()];
            for (std::size_t i = 0; i < hi; ++i) mid_delay[i] = 0.5 * (oldest[i] + next[i]);
            d_start = oldest.data();
            d_end = next.data();
            d_mid = mid_delay.data();
        }

        mol.rhs(st.u, d_start, k1, hi);
        for (std::size_t i = 0; i < hi; ++i) stage[i] = st.u[i] + 0.5 * dt * k1[i];
        mol.rhs(stage, d_mid, k2, hi);
        for (std::size_t i = 0; i < hi; ++i) stage[i] = st.u[i] + 0.5 * dt * k2[i];
        mol.rhs(stage, d_mid, k3, hi);
        for (std::size_t i = 0; i < hi; ++i) stage[i] = st.u[i] + dt * k3[i];
        mol.rhs(stage, d_end, k4, hi);

        for (std::size_t i = 0; i < hi; ++i) {
            double v = st.u[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            if (!std::isfinite(v)) {
                throw ConsistencyError("PDE field became non-finite at t = " +
                                       std::to_string((n + 1) * dt));
            }
            if (std::abs(v) < kFlushBelow) v = 0.0;
            min_value = std::min(min_value, v);
            if (v < -kNegativeSlack) {
                throw ConsistencyError("PDE field became negative (" + std::to_string(v) +
                                       ") at t = " + std::to_string((n + 1) * dt));
            }
            st.u[i] = v;
        }
        if (st.delay_steps > 0) {
            auto& slot = st.history[st.head];
            std::copy(st.u.begin(), st.u.begin() + static_cast<std::ptrdiff_t>(hi), slot.begin());
            st.head = (st.head + 1) % st.history.size();
        }
        st.t_now = static_cast<double>(n + 1) * dt;

        if ((n + 1) % sample_every == 0) {
            if (const auto pos = front_position(st.u, st.dx)) run.front.push_back({st.t_now, *pos});
        }
        maybe_snapshot(st.t_now);
    }
    if (run.snapshots.empty() || std::abs(run.snapshots.back().t - st.t_now) > 0.5 * dt) {
        run.snapshots.push_back({st.t_now, st.u});
    }
    run.min_value = min_value;
    return run;
}

SpeedFit measure_front_speed(const std::vector<FrontSample>& series) {
    const std::size_t start = series.size() - series.size() / 3;
    const std::size_t count = series.size() - start;
    if (count < 10) {
        throw PreconditionError("front-speed fit needs >= 10 samples in the final third, got " +
                                std::to_string(count));
    }
    double mt = 0.0, mx = 0.0;
    for (std::size_t i = start; i < series.size(); ++i) {
        mt += series[i].t;
        mx += series[i].position;
    }
    mt /= static_cast<double>(count);
    mx /= static_cast<double>(count);
    double stt = 0.0, stx = 0.0;
    for (std::size_t i = start; i < series.size(); ++i) {
        const double dt = series[i].t - mt;
        stt += dt * dt;
        stx += dt * (series[i].position - mx);
    }
    SpeedFit fit;
    fit.samples = count;
    fit.speed = stt > 0.0 ? stx / stt : 0.0;
    fit.intercept = mx - fit.speed * mt;
    double ss = 0.0;
    for (std::size_t i = start; i < series.size(); ++i) {
        const double r = series[i].position - (fit.intercept + fit.speed * series[i].t);
        ss += r * r;
    }
    fit.rms_residual = std::sqrt(ss / static_cast<double>(count));
    return fit;
}

namespace {

double interpolate(const std::vector<double>& v, double origin, double step, double x) {
    const double pos = (x - origin) / step;
    const double last = static_cast<double>(v.size() - 1);
    if (pos < -1e-9 || pos > last + 1e-9) {
        throw PreconditionError("interpolation point outside the sampled range");
    }
    const double clamped = std::clamp(pos, 0.0, last);
    const auto i = std::min<std::size_t>(static_cast<std::size_t>(clamped), v.size() - 2);
    const double frac = clamped - static_cast<double>(i);
    return v[i] + frac * (v[i + 1] - v[i]);
}

std::vector<double> window_nodes(const ComovingWindow& w) {
    if (!(w.step > 0.0) || !(w.xi_max > w.xi_min)) {
        throw PreconditionError("co-moving window needs xi_max > xi_min and a positive step");
    }
    const auto n = static_cast<std::size_t>(std::llround((w.xi_max - w.xi_min) / w.step)) + 1;
    std::vector<double> xi(n);
    for (std::size_t i = 0; i < n; ++i) xi[i] = w.xi_min + static_cast<double>(i) * w.step;
    return xi;
}

}  // namespace

ComovingProfile extract_comoving_profile(const PdeRun& run, double at_time,
                                         const ComovingWindow& window) {
    const Snapshot* snap = nullptr;
    for (const auto& s : run.snapshots) {
        if (std::abs(s.t - at_time) <= 0.5 * run.state.dt) snap = &s;
    }
    if (!snap) {
        throw PreconditionError("no stored snapshot at t = " + std::to_string(at_time));
    }
    const auto front = front_position(snap->u, run.state.dx);
    if (!front) {
        throw PreconditionError("no front detected: u stays on one side of 1/2");
    }
    ComovingProfile out;
    out.time = snap->t;
    out.front = *front;
    out.xi = window_nodes(window);
    out.u.reserve(out.xi.size());
    for (double xi : out.xi) out.u.push_back(interpolate(snap->u, 0.0, run.state.dx, *front - xi));
    return out;
}

ComovingProfile sample_aligned(const ProfileSolution& bvp, const ComovingWindow& window) {
    const auto origin = first_crossing(bvp);
    if (!origin) throw PreconditionError("profile never reaches 1/2");
    ComovingProfile out;
    out.front = *origin;
    out.xi = window_nodes(window);
    out.u.reserve(out.xi.size());
    for (double xi : out.xi) {
        const double t = *origin + xi;
        if (t < bvp.grid.t_min) {
            out.u.push_back(bvp.left_amplitude * std::exp(bvp.decay_rate * (t - bvp.grid.t_min)));
        } else if (t > bvp.grid.t_max) {
            out.u.push_back(bvp.phi.back());
        } else {
            out.u.push_back(interpolate(bvp.phi, bvp.grid.t_min, bvp.grid.step, t));
        }
    }
    return out;
}

double profile_distance(const ProfileSolution& bvp, const ComovingProfile& pde, double xi_min,
                        double xi_max) {
    const auto origin = first_crossing(bvp);
    if (!origin) throw PreconditionError("profile never reaches 1/2");
    double dist = 0.0;
    for (std::size_t i = 0; i < pde.xi.size(); ++i) {
        const double xi = pde.xi[i];
        const double t = *origin + xi;
        if (xi < xi_min || xi > xi_max || t < bvp.grid.t_min || t > bvp.grid.t_max) continue;
        const double phi = interpolate(bvp.phi, bvp.grid.t_min, bvp.grid.step, t);
        dist = std::max(dist, std::abs(phi - pde.u[i]));
    }
    return dist;
}

double first_overshoot(const std::vector<double>& values) {
    for (std::size_t i = 1; i + 1 < values.size(); ++i) {
        if (values[i] > 1.0 && values[i] >= values[i - 1] && values[i] > values[i + 1]) {
            return values[i] - 1.0;
        }
    }
    return 0.0;
}

}  // namespace kpp::wave
