#include "run.hpp"

#include <cmath>
#include <filesystem>
#include <limits>
#include <sstream>

#include "kpp/bounds.hpp"
#include "kpp/errors.hpp"
#include "kpp/invariants.hpp"
#include "kpp/oscillation.hpp"
#include "kpp/pde_front.hpp"
#include "kpp/spectral.hpp"
#include "kpp/wave_profiles.hpp"
#include "output.hpp"

namespace kpp::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

template <class F>
double or_nan(F&& f) {
    try {
        return f();
    } catch (const Error&) {
        return kNaN;
    }
}

std::string fmt(double v) { return format_double(v); }
std::string fmt_bool(bool b) { return b ? "true" : "false"; }

class Session {
public:
    explicit Session(const RunConfig& cfg) : cfg_(cfg) { std::filesystem::create_directories(cfg.output_dir); }

    void csv(const std::string& name, const CsvTable& table) { save(name, table.str()); }

    void svg(const std::string& name, const std::string& title, const std::string& xl, const std::string& yl,
             const std::vector<Series>& series) {
        if (cfg_.emit_svg) save(name, render_svg(title, xl, yl, series));
    }

    std::ostringstream& report() { return report_; }

    RunResult finish(int code) {
        save("report.txt", report_.str());
        result_.exit_code = code;
        result_.summary = report_.str();
        return result_;
    }

private:
    void save(const std::string& name, const std::string& text) {
        const auto path = cfg_.output_dir / name;
        write_text(path, text);
        result_.files.push_back(path);
    }

    const RunConfig& cfg_;
    std::ostringstream report_;
    RunResult result_;
};

QuadratureConfig quad_of(const RunConfig& cfg) {
    QuadratureConfig q;
    q.abs_tol = cfg.quad_abs_tol;
    q.rel_tol = cfg.quad_rel_tol;
    q.max_subdivisions = cfg.quad_max_subdivisions;
    q.validate();
    return q;
}

std::vector<double> x_grid(const RunConfig& cfg) {
    std::vector<double> xs(cfg.x_points);
    for (std::size_t i = 0; i < cfg.x_points; ++i) {
        xs[i] = cfg.x_min + (cfg.x_max - cfg.x_min) * static_cast<double>(i) / static_cast<double>(cfg.x_points - 1);
    }
    return xs;
}

wave::GridConfig grid_of(const RunConfig& cfg) {
    wave::GridConfig g;
    g.left_length = cfg.left_length;
    g.right_length = cfg.right_length;
    g.step = cfg.step;
    g.steps_per_delay = cfg.steps_per_delay;
    return g;
}

wave::NewtonConfig newton_of(const RunConfig& cfg) {
    wave::NewtonConfig n;
    n.tolerance = cfg.newton_tol;
    n.max_iterations = cfg.max_iterations;
    return n;
}

void header(std::ostringstream& r, const RunConfig& cfg, bool with_params = true) {
    r << "command: " << command_name(*cfg.command) << '\n';
    if (with_params) r << "c: " << fmt(cfg.c) << "\ntau: " << fmt(cfg.tau) << '\n';
}

CsvTable profile_table(const wave::ProfileSolution& sol, const osc::LogProfile* lp) {
    CsvTable t({"t", "phi", "dphi", "x_log", "y"});
    for (std::size_t i = 0; i < sol.phi.size(); ++i) {
        t.add_row({fmt(sol.grid.at(i)), fmt(sol.phi[i]), fmt(sol.dphi[i]), fmt(lp ? lp->x[i] : kNaN),
                   fmt(lp ? lp->y[i] : kNaN)});
    }
    return t;
}

void describe_solution(std::ostringstream& r, const wave::ProfileSolution& sol) {
    r << "converged: " << fmt_bool(sol.converged) << "\npositive: " << fmt_bool(sol.positive)
      << "\nnewton_iterations: " << sol.iterations << "\nresidual_inf: " << fmt(sol.residual_inf)
      << "\ndomain: [" << fmt(sol.grid.t_min) << ", " << fmt(sol.grid.t_max) << "]\nstep: " << fmt(sol.grid.step)
      << "\nnodes: " << sol.grid.n << "\nright_extensions: " << sol.extensions << '\n';
}

Series column_series(const CsvTable& t, const std::string& x, const std::string& y) {
    return {y, t.column(x), t.column(y)};
}

int run_bounds(const RunConfig& cfg, Session& s) {
    const ModelParams p = cfg.params();
    const auto quad = quad_of(cfg);
    CsvTable t({"x", "rho", "r", "A_minus", "A_plus", "B", "R", "D", "F"});
    for (double x : x_grid(cfg)) {
        t.add_row({fmt(x), fmt(bounds::eval_rho(x, p).value), fmt(or_nan([&] { return bounds::eval_r(x, p); })),
                   fmt(or_nan([&] { return bounds::eval_A_minus(x, p, quad); })),
                   fmt(or_nan([&] { return bounds::eval_A_plus(x, p).value; })),
                   fmt(or_nan([&] { return bounds::eval_B(x, p); })),
                   fmt(or_nan([&] { return bounds::eval_R(x, p); })),
                   fmt(or_nan([&] { return bounds::eval_D(x, p, quad); })),
                   fmt(or_nan([&] { return bounds::eval_F(x, p, quad); }))});
    }
    s.csv("bounds.csv", t);
    s.svg("bounds.svg", "bounding functions", "x", "value",
          {column_series(t, "x", "rho"), column_series(t, "x", "D"), column_series(t, "x", "R"),
           column_series(t, "x", "F")});
    auto& r = s.report();
    header(r, cfg);
    r << "x2: " << fmt(bounds::eval_x2(p)) << "\nrows: " << t.rows() << '\n';
    return kExitOk;
}

int run_verify(const RunConfig& cfg, Session& s) {
    bounds::InvariantGrid grid;
    grid.c = cfg.c_values;
    grid.tau = cfg.tau_values;
    grid.x_min = cfg.x_min;
    grid.x_max = cfg.x_max;
    grid.points = cfg.x_points;
    grid.tol = cfg.tol;
    grid.quad = quad_of(cfg);
    const auto suite = bounds::verify_invariants(grid);

    CsvTable t({"check", "c", "tau", "x", "lhs", "rhs", "margin", "pass"});
    for (const auto& smp : suite.samples) {
        t.add_row({smp.name, fmt(smp.c), fmt(smp.tau), fmt(smp.x), fmt(smp.lhs), fmt(smp.rhs), fmt(smp.margin),
                   fmt_bool(smp.pass)});
    }
    s.csv("verify.csv", t);
    auto& r = s.report();
    header(r, cfg, false);
    r << "tolerance: " << fmt(cfg.tol) << '\n';
    for (const auto& tally : suite.tallies) {
        r << tally.name << ": checked " << tally.checked << ", violations " << tally.violations << ", worst margin "
          << fmt(tally.worst_margin) << " at (c, tau, x) = (" << fmt(tally.worst_c) << ", " << fmt(tally.worst_tau)
          << ", " << fmt(tally.worst_x) << ")\n";
    }
    r << "violations: " << suite.violations() << "\noverall: " << (suite.pass() ? "pass" : "fail") << '\n';
    return suite.pass() ? kExitOk : kExitVerificationFailed;
}

int run_wave(const RunConfig& cfg, Session& s) {
    const auto sol = wave::solve_profile_bvp(cfg.params(), grid_of(cfg), newton_of(cfg));
    std::optional<osc::LogProfile> lp;
    if (sol.positive) lp = osc::to_log_coordinates(sol);
    const auto t = profile_table(sol, lp ? &*lp : nullptr);
    s.csv("profile.csv", t);
    s.svg("profile.svg", "travelling profile", "t", "phi", {column_series(t, "t", "phi")});
    auto& r = s.report();
    header(r, cfg);
    describe_solution(r, sol);
    return sol.converged ? kExitOk : kExitNotConverged;
}

int run_simulate(const RunConfig& cfg, Session& s) {
    wave::SimConfig sc;
    sc.length = cfg.pde_length;
    sc.dx = cfg.pde_dx;
    sc.t_end = cfg.t_end;
    sc.sample_interval = cfg.sample_interval;
    const auto run = wave::simulate_pde_front(cfg.params(), sc);

    CsvTable front({"t", "position"});
    for (const auto& f : run.front) front.add_row({fmt(f.t), fmt(f.position)});
    s.csv("front.csv", front);
    s.svg("front.svg", "front position", "t", "position", {column_series(front, "t", "position")});

    auto& r = s.report();
    header(r, cfg);
    r << "dt: " << fmt(run.state.dt) << "\nmin_value: " << fmt(run.min_value) << '\n';
    if (const auto fit = or_nan([&] { return wave::measure_front_speed(run.front).speed; }); std::isfinite(fit)) {
        const auto sf = wave::measure_front_speed(run.front);
        r << "speed: " << fmt(sf.speed) << "\nspeed_fit_rms: " << fmt(sf.rms_residual)
          << "\nspeed_fit_samples: " << sf.samples << '\n';
    } else {
        r << "speed: nan\n";
    }
    if (wave::front_position(run.state.u, run.state.dx)) {
        const auto prof = wave::extract_comoving_profile(run, run.state.t_now);
        CsvTable cm({"xi", "u"});
        for (std::size_t i = 0; i < prof.xi.size(); ++i) cm.add_row({fmt(prof.xi[i]), fmt(prof.u[i])});
        s.csv("comoving.csv", cm);
        s.svg("comoving.svg", "co-moving profile", "xi", "u", {column_series(cm, "xi", "u")});
        r << "front_at_end: " << fmt(prof.front) << '\n';
    }
    return kExitOk;
}

int run_certify(const RunConfig& cfg, Session& s) {
    const ModelParams p = cfg.params();
    auto& r = s.report();
    header(r, cfg);
    const auto sol = wave::solve_profile_bvp(p, grid_of(cfg), newton_of(cfg));
    describe_solution(r, sol);
    if (!sol.converged) {
        s.csv("profile.csv", profile_table(sol, nullptr));
        return kExitNotConverged;
    }

    osc::CertifyConfig cc;
    cc.noise_floor = cfg.noise_floor;
    cc.slack = cfg.slack;
    cc.tail_threshold = cfg.tail_threshold;
    cc.f_iterations = cfg.f_iterations;
    cc.quad = quad_of(cfg);
    const auto cert = osc::certify_profile(sol, cc);

    const auto prof = profile_table(sol, &cert.log);
    s.csv("profile.csv", prof);
    CsvTable o({"j", "Q", "T", "V"});
    for (std::size_t j = 0; j < cert.record.V.size(); ++j) {
        o.add_row({std::to_string(j), fmt(cert.record.Q[j]), fmt(cert.record.T[j]), fmt(cert.record.V[j])});
    }
    s.csv("oscillation.csv", o);
    CsvTable c({"check", "interval", "lhs", "rhs", "margin", "pass"});
    for (const auto& ch : cert.report.checks) {
        c.add_row({ch.name, ch.interval, fmt(ch.lhs), fmt(ch.rhs), fmt(ch.margin), fmt_bool(ch.pass)});
    }
    s.csv("certification.csv", c);
    s.svg("profile.svg", "log-coordinate profile", "t", "x", {column_series(prof, "t", "x_log")});
    s.svg("oscillation.svg", "extremum amplitudes", "T", "V", {column_series(o, "T", "V")});

    const auto& rep = cert.report;
    r << "extrema: " << cert.record.V.size() << "\nm_star: " << fmt(rep.m_star) << "\nM_star: " << fmt(rep.M_star)
      << "\ntail_low_confidence: " << fmt_bool(cert.limits.low_confidence) << "\nchecks: " << rep.checks.size()
      << "\nfailures: " << rep.failures() << '\n';
    if (rep.trivially_certified) r << "status: trivially certified (tau <= 1)\n";
    if (!rep.notes.empty() && !rep.trivially_certified) r << "notes: " << rep.notes << '\n';
    r << "overall: " << (rep.overall ? "pass" : "fail") << '\n';
    return rep.overall ? kExitOk : kExitVerificationFailed;
}

int run_boundary(const RunConfig& cfg, Session& s) {
    CsvTable t({"c", "tau_star", "omega"});
    for (double c : cfg.boundary_c) {
        const auto cp = spectral::hopf_boundary(c);
        t.add_row({fmt(cp.c), fmt(cp.tau_star), fmt(cp.omega)});
    }
    s.csv("boundary.csv", t);
    s.svg("boundary.svg", "imaginary-axis crossing", "c", "tau_star", {column_series(t, "c", "tau_star")});
    auto& r = s.report();
    header(r, cfg, false);
    r << "rows: " << t.rows() << '\n';
    r << "note: crossing curve from the characteristic equation at lambda = i omega\n";
    return kExitOk;
}

}  // namespace

RunResult run(const RunConfig& cfg) {
    RunResult failed;
    try {
        validate(cfg);
        Session s(cfg);
        int code = kExitOk;
        switch (*cfg.command) {
            case Command::Bounds: code = run_bounds(cfg, s); break;
            case Command::Verify: code = run_verify(cfg, s); break;
            case Command::Wave: code = run_wave(cfg, s); break;
            case Command::Simulate: code = run_simulate(cfg, s); break;
            case Command::Certify: code = run_certify(cfg, s); break;
            case Command::Boundary: code = run_boundary(cfg, s); break;
        }
        return s.finish(code);
    } catch (const ParseError& e) {
        failed.exit_code = kExitInvalidParameters;
        failed.summary = std::string("invalid configuration: ") + e.what() + '\n';
    } catch (const DomainError& e) {
        failed.exit_code = kExitInvalidParameters;
        failed.summary = std::string("invalid parameters: ") + e.what() + '\n';
    } catch (const PreconditionError& e) {
        failed.exit_code = kExitInvalidParameters;
        failed.summary = std::string("invalid parameters: ") + e.what() + '\n';
    } catch (const ConvergenceError& e) {
        failed.exit_code = kExitNotConverged;
        failed.summary = std::string("solver did not converge: ") + e.what() + '\n';
    } catch (const ToleranceError& e) {
        failed.exit_code = kExitNotConverged;
        failed.summary = std::string("tolerance not reached: ") + e.what() + '\n';
    } catch (const Error& e) {
        failed.exit_code = kExitVerificationFailed;
        failed.summary = std::string("verification failed: ") + e.what() + '\n';
    } catch (const std::filesystem::filesystem_error& e) {
        failed.exit_code = kExitInvalidParameters;
        failed.summary = std::string("output error: ") + e.what() + '\n';
    }
    return failed;
}

}  // namespace kpp::cli
