// Acceptance run: one line per criterion, exit status 1 if any fails.
// Usage: kpp_acceptance [id ...]   (no ids: all criteria)

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "kpp/bounds.hpp"
#include "kpp/invariants.hpp"
#include "kpp/oscillation.hpp"
#include "kpp/pde_front.hpp"
#include "kpp/spectral.hpp"
#include "kpp/wave_profiles.hpp"

namespace {

using namespace kpp;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [violated: " << what << "]";
        }
    }
};

std::string g(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Five-point central stencils, step s.
struct Stencil {
    double d1, d2, d3;
};
Stencil central(const std::function<double(double)>& f, double x, double s) {
    const double fm2 = f(x - 2 * s), fm1 = f(x - s), f0 = f(x), fp1 = f(x + s), fp2 = f(x + 2 * s);
    return {(fm2 - 8 * fm1 + 8 * fp1 - fp2) / (12 * s), (-fm2 + 16 * fm1 - 30 * f0 + 16 * fp1 - fp2) / (12 * s * s),
            (fp2 - 2 * fp1 + 2 * fm1 - fm2) / (2 * s * s * s)};
}

void bounding_suite(Outcome& out) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto suite = bounds::verify_invariants();
    const double dt = seconds_since(t0);
    std::size_t checked = 0;
    for (const auto& t : suite.tallies) {
        checked += t.checked;
        if (t.violations) out.detail << " " << t.name << ":" << t.violations;
    }
    out.detail << " samples=" << checked << " violations=" << suite.violations() << " time=" << g(dt) << "s";
    out.require(suite.violations() == 0, "zero violations at 1e-9");
    out.require(suite.tallies.size() == 11, "all eleven inequality families sampled");
    out.require(dt < 30.0, "runtime < 30 s");
}

void spot_values(Outcome& out) {
    const ModelParams p(2.0, 1.5);
    const double eps = 4 * std::numeric_limits<double>::epsilon();
    const double rho = bounds::eval_rho(1.0, p).value;
    const double r = bounds::eval_r(1.0, p);
    const double x2 = bounds::eval_x2(p);
    const double ap = bounds::eval_A_plus(1.0, p).value;
    const double bx2 = bounds::eval_B(x2, p);
    const double apx2 = bounds::eval_A_plus(x2, p).value;
    const double R = bounds::eval_R(1.0, p);
    const double F = bounds::eval_F(1.0, p);
    out.detail << " rho(1)=" << g(rho) << " r(1)=" << g(r) << " x2=" << g(x2) << " A+(1)=" << g(ap)
               << " |B(x2)-A+(x2)|=" << g(std::abs(bx2 - apx2)) << " R(1)=" << g(R) << " F(1)=" << g(F);
    out.require(std::abs(rho + 1.1804080) <= 1e-6, "rho(1) = -1.1804080");
    out.require(std::abs(r + 1.2) <= eps, "r(1) = -1.2");
    out.require(x2 == 2.0, "x2 = 2");
    out.require(std::abs(ap + 0.7371290) <= 1e-6, "A+(1) = -0.7371290");
    out.require(std::abs(bx2 - apx2) <= 1e-10, "B(x2) = A+(x2)");
    out.require(std::abs(R + 0.75) <= eps, "R(1) = -0.75");
    out.require(F > 0.95 && F < 0.98 && F < 1.0, "F(1) in (0.95, 0.98)");
}

void origin_jets(Outcome& out) {
    double worst_a1 = 0.0, worst_a2 = 0.0;
    for (double c : {2.0, 2.5, 3.0, 5.0, 10.0}) {
        for (double tau : {1.1, 1.25, 1.4, 1.5}) {
            const ModelParams p(c, tau);
            const double a1 = 0.5 - tau;
            const double a2 = (tau - 1.0 / 6.0) * (1.0 - 2.0 / (c * c));
            const auto am = central([&](double x) { return bounds::eval_A_minus(x, p); }, 0.0, 1e-2);
            const auto ap = central([&](double x) { return bounds::eval_A_plus(x, p).value; }, 0.0, 1e-2);
            worst_a1 = std::max({worst_a1, std::abs(am.d1 - a1), std::abs(ap.d1 - a1)});
            worst_a2 = std::max({worst_a2, std::abs(am.d2 - a2), std::abs(ap.d2 - a2)});
        }
    }
    out.detail << " max|A'(0)-(1/2-tau)|=" << g(worst_a1) << " max|A''(0)-jet|=" << g(worst_a2);
    out.require(worst_a1 <= 1e-5, "A'(0) within 1e-5");
    out.require(worst_a2 <= 1e-4, "A''(0) within 1e-4");
    for (double c : {2.0, 3.0, 10.0}) {
        const ModelParams p(c, 1.5);
        const auto f = central([&](double x) { return bounds::eval_A_minus_of_R(x, p); }, 0.0, 2e-2);
        out.detail << " c=" << g(c) << ":F'=" << g(f.d1) << ",F''=" << g(f.d2) << ",F'''=" << g(f.d3);
        out.require(std::abs(f.d1 - 1.0) <= 1e-4, "F'(0) = 1");
        out.require(std::abs(f.d2) <= 1e-3, "F''(0) = 0");
        out.require(f.d3 < 0.0, "F'''(0) < 0");
    }
}

struct PdeCache {
    std::map<double, wave::PdeRun> runs;
    const wave::PdeRun& get(double tau) {
        auto it = runs.find(tau);
        if (it == runs.end()) it = runs.emplace(tau, wave::simulate_pde_front(ModelParams(2.0, tau))).first;
        return it->second;
    }
};
PdeCache pde_cache;

void wave_solver(Outcome& out) {
    const auto t0 = std::chrono::steady_clock::now();
    for (double tau : {0.0, 1.0, 1.4, 1.5}) {
        const ModelParams p(2.0, tau);
        const auto sol = wave::solve_profile_bvp(p);
        bool positive = true;
        for (double v : sol.phi) positive = positive && v > 0.0;
        const auto& run = pde_cache.get(tau);
        const auto prof = wave::extract_comoving_profile(run, run.state.t_now);
        const wave::ComovingWindow win;
        const double dist = wave::profile_distance(sol, prof, win.xi_min, win.xi_max);
        out.detail << " tau=" << g(tau) << ":res=" << g(sol.residual_inf) << ",dist=" << g(dist);
        out.require(sol.converged && sol.residual_inf < 1e-10, "Newton residual < 1e-10 at tau=" + g(tau));
        out.require(positive, "positive profile at tau=" + g(tau));
        out.require(dist < 1e-2, "BVP/PDE distance < 1e-2 at tau=" + g(tau));
        if (tau == 1.5) {
            const auto rec = osc::extract_oscillation(osc::to_log_coordinates(sol));
            bool alternating = rec.V.size() >= 2;
            for (std::size_t k = 1; k < rec.V.size(); ++k) alternating = alternating && rec.V[k] * rec.V[k - 1] < 0.0;
            bool monotone = true;
            for (std::size_t i = 1; i < sol.phi.size(); ++i) monotone = monotone && sol.phi[i] >= sol.phi[i - 1];
            out.detail << ",extrema=" << rec.V.size();
            out.require(!monotone, "tau=1.5 profile non-monotone");
            out.require(alternating, "alternating V_j at tau=1.5");
        }
    }
    const double dt = seconds_since(t0);
    out.detail << " time=" << g(dt) << "s";
    out.require(dt < 300.0, "runtime < 5 min");
}

std::map<std::pair<double, double>, osc::Certification> cert_cache;
const osc::Certification& certified(double c, double tau) {
    auto key = std::make_pair(c, tau);
    auto it = cert_cache.find(key);
    if (it == cert_cache.end()) {
        const auto sol = wave::solve_profile_bvp(ModelParams(c, tau));
        it = cert_cache.emplace(key, osc::certify_profile(sol)).first;
    }
    return it->second;
}

void front_convergence(Outcome& out) {
    double worst_tail = 0.0;
    std::size_t min_extrema = std::numeric_limits<std::size_t>::max();
    for (double c : {2.0, 2.5, 3.0}) {
        for (double tau : {1.1, 1.25, 1.4, 1.5}) {
            const auto& cert = certified(c, tau);
            const auto& V = cert.record.V;
            const std::string at = "(" + g(c) + "," + g(tau) + ")";
            min_extrema = std::min(min_extrema, V.size());
            bool decreasing = V.size() >= 4;
            for (std::size_t k = V.size() >= 4 ? V.size() - 3 : V.size(); k < V.size(); ++k) {
                decreasing = decreasing && std::abs(V[k]) < std::abs(V[k - 1]);
            }
            const double tail = std::max(std::abs(cert.limits.m_star), std::abs(cert.limits.M_star));
            worst_tail = std::max(worst_tail, tail);
            out.require(decreasing, "|V| decreasing over last 4 at " + at);
            out.require(tail < 1e-3, "|m*|,|M*| < 1e-3 at " + at);
            out.require(cert.report.overall, "certification overall at " + at);
        }
    }
    out.detail << " profiles=12 min_extrema=" << min_extrema << " max_tail=" << g(worst_tail);
}

// Names of the checks that make up each check family.
bool in_family(const std::string& name) {
    static const char* names[] = {"y_above_rho_over_h", "y_below_rho_over_h", "y_above_lambda1", "rho_over_h_identity",
                                  "y_unique_minimum",   "y_unique_maximum",   "V_odd_le_A_minus", "V_even_ge_B",
                                  "V_even_ge_A_plus",   "T_minus_Q_lt_h",     "V0_lower",         "unique_inflection"};
    for (const char* n : names) {
        if (name == n) return true;
    }
    return false;
}

void inequality_checks(Outcome& out) {
    std::size_t checks = 0, failed = 0;
    double worst = std::numeric_limits<double>::infinity();
    for (double c : {2.0, 2.5, 3.0, 5.0}) {
        for (double tau : {1.1, 1.25, 1.4, 1.5}) {
            const auto& cert = certified(c, tau);
            bool saw_slope = false, saw_amp = false, saw_infl = false;
            for (const auto& ch : cert.report.checks) {
                if (!in_family(ch.name)) continue;
                ++checks;
                if (!ch.pass) ++failed;
                worst = std::min(worst, ch.margin);
                saw_slope = saw_slope || ch.name == "y_above_rho_over_h";
                saw_amp = saw_amp || ch.name == "V_odd_le_A_minus";
                saw_infl = saw_infl || ch.name == "unique_inflection";
            }
            out.require(saw_slope && saw_amp && saw_infl, "all check families present at (" + g(c) + "," + g(tau) + ")");
        }
    }
    out.detail << " checks=" << checks << " failed=" << failed << " worst_margin=" << g(worst);
    out.require(failed == 0, "every check passes at slack 1e-6");

    // Negative controls, each on a copy of the c = 2, tau = 3/2 data.
    const ModelParams p(2.0, 1.5);
    const auto& base = certified(2.0, 1.5);
    int controls = 0, caught = 0;
    auto control = [&](const char* what, bool flagged) {
        ++controls;
        if (flagged) {
            ++caught;
        } else {
            out.require(false, std::string("negative control not flagged: ") + what);
        }
    };
    {
        auto lp = base.log;
        const std::size_t k = 1;  // V_1 > 0: rising segment [T_1, T_2]
        const std::size_t i = (base.record.critical_index[k] + base.record.T_index[k + 1]) / 2;
        lp.y[i] = bounds::eval_f(lp.g[i], p) - 1e-3;
        control("y dips below rho/h after p_j", !osc::verify_slope_bounds(lp, base.record).overall);
    }
    {
        auto lp = base.log;
        const std::size_t k = 2;
        const std::size_t i = (base.record.critical_index[k] + base.record.T_index[k + 1]) / 2;
        lp.y[i] = bounds::eval_f(lp.g[i], p) + 1e-3;
        control("y rises above rho/h after q_j", !osc::verify_slope_bounds(lp, base.record).overall);
    }
    {
        auto rec = base.record;
        rec.V[1] = bounds::eval_A_minus(rec.V[0], p) + 1e-3;
        control("V_1 > A_-(V_0)", !osc::verify_amplitude_bounds(rec, p).overall);
    }
    {
        auto rec = base.record;
        rec.V[2] = bounds::eval_B(rec.V[1], p) - 1e-3;
        control("V_2 < B(V_1)", !osc::verify_amplitude_bounds(rec, p).overall);
    }
    {
        auto rec = base.record;
        rec.V[0] = -p.c() * p.h() - 1e-3;
        control("V_0 < -c h", !osc::verify_amplitude_bounds(rec, p).overall);
    }
    {
        auto rec = base.record;
        rec.T[0] = rec.Q[0] + p.h() + 1e-3;
        control("T_0 - Q_0 > h", !osc::verify_structure(rec, p).overall);
    }
    {
        auto rec = base.record;
        rec.inflections.push_back(0.5 * (rec.T[3] + rec.T[4]));
        std::sort(rec.inflections.begin(), rec.inflections.end());
        control("two inflections between extrema", !osc::count_inflections(rec).overall);
    }
    out.detail << " negative_controls=" << caught << "/" << controls;
}

void f_iteration(Outcome& out) {
    for (double c : {2.0, 3.0, 10.0}) {
        const ModelParams p(c, 1.5);
        out.detail << " c=" << g(c) << ":";
        for (double x0 : {0.5, 1.0, 2.0, 5.0}) {
            const auto seq = osc::iterate_F(x0, p, 50);
            bool decreasing = seq.size() >= 2;
            for (std::size_t k = 1; k < seq.size(); ++k) decreasing = decreasing && seq[k] < seq[k - 1];
            out.detail << " F^50(" << g(x0) << ")=" << g(seq.back());
            const std::string at = "(x0=" + g(x0) + ",c=" + g(c) + ")";
            out.require(decreasing, "strictly decreasing " + at);
            out.require(seq.back() < 1e-6, "F^50 < 1e-6 " + at);
        }
    }
}

void spectral_checks(Outcome& out) {
    const auto base = spectral::count_rhp_roots(ModelParams(2.0, 0.0));
    out.detail << " count(c=2,tau=0)=" << base.count;
    out.require(base.count == 1, "tau = 0 count is 1");
    double worst = 0.0;
    for (double c : {2.0, 2.5, 3.0, 5.0, 10.0}) {
        const auto br = spectral::bisect_crossing(c, 1.5, 2.0, 1e-4);
        const auto cp = spectral::hopf_boundary(c);
        const double gap = std::abs(br.midpoint() - cp.tau_star);
        worst = std::max(worst, gap);
        const std::string at = "c=" + g(c);
        out.require(br.count_lo == 1 && br.count_hi == 3, "count 1 -> 3 at " + at);
        out.require(br.tau_hi - br.tau_lo <= 1e-4, "bracket width <= 1e-4 at " + at);
        out.require(gap <= 1e-4, "bisection matches closed form at " + at);
    }
    const double t2 = spectral::hopf_boundary(2.0).tau_star;
    const double t100 = spectral::hopf_boundary(100.0).tau_star;
    double min_star = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= 60; ++k) min_star = std::min(min_star, spectral::hopf_boundary(2.0 * std::pow(500.0, k / 60.0)).tau_star);
    out.detail << " max|bisect-closed|=" << g(worst) << " tau*(2)=" << g(t2) << " tau*(100)=" << g(t100)
               << " min tau* on [2,1000]=" << g(min_star);
    out.require(std::abs(t2 - 1.861) <= 1e-3, "tau*(2) = 1.861");
    out.require(std::abs(t100 - std::numbers::pi / 2) <= 1e-3, "tau*(100) = pi/2");
    out.require(min_star > 1.5, "tau* > 3/2 on sampled range");
}

void front_speed(Outcome& out) {
    for (double tau : {0.0, 1.5}) {
        const auto fit = wave::measure_front_speed(pde_cache.get(tau).front);
        out.detail << " tau=" << g(tau) << ":speed=" << g(fit.speed);
        out.require(std::abs(fit.speed - 2.0) <= 0.04, "speed within 2% of 2 at tau=" + g(tau));
    }
}

struct Criterion {
    int id;
    const char* name;
    void (*fn)(Outcome&);
};

const Criterion kCriteria[] = {
    {1, "bounding-function suite", bounding_suite},
    {2, "spot values", spot_values},
    {3, "jets at the origin", origin_jets},
    {4, "wave solver", wave_solver},
    {5, "front convergence on the certified grid", front_convergence},
    {6, "slope, amplitude and inflection bounds", inequality_checks},
    {7, "F-iteration certificate", f_iteration},
    {8, "spectral count and crossing curve", spectral_checks},
    {9, "front speed", front_speed},
};

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> wanted;
    for (int i = 1; i < argc; ++i) wanted.push_back(std::atoi(argv[i]));
    int failures = 0;
    for (const auto& c : kCriteria) {
        if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.id) == wanted.end()) continue;
        Outcome out;
        try {
            c.fn(out);
        } catch (const std::exception& e) {
            out.pass = false;
            out.detail << " [exception: " << e.what() << "]";
        }
        if (!out.pass) ++failures;
        std::printf("[%s] criterion %d: %s:%s\n", out.pass ? "PASS" : "FAIL", c.id, c.name, out.detail.str().c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
