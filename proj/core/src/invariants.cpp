#include "kpp/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "kpp/bounds.hpp"
#include "kpp/errors.hpp"
#include "kpp/parallel.hpp"
#include "kpp/params.hpp"

namespace kpp::bounds {

namespace {

class Sampler {
public:
    Sampler(std::vector<InvariantSample>& out, double c, double tau, double tol)
        : out_(out), c_(c), tau_(tau), tol_(tol) {}

    void less(const char* name, double x, double lhs, double rhs) { push(name, x, lhs, rhs, rhs - lhs); }
    void greater(const char* name, double x, double lhs, double rhs) { push(name, x, lhs, rhs, lhs - rhs); }

private:
    void push(const char* name, double x, double lhs, double rhs, double margin) {
        out_.push_back({name, c_, tau_, x, lhs, rhs, margin, std::isfinite(margin) && margin > -tol_});
    }

    std::vector<InvariantSample>& out_;
    double c_;
    double tau_;
    double tol_;
};

void sample_pair(const InvariantGrid& grid, double c, double tau, std::vector<InvariantSample>& out) {
    const ModelParams p(c, tau);
    p.require_bounding_tau();
    const ModelParams crit = p.with_tau(kCriticalTau);
    const bool critical = tau == kCriticalTau;
    Sampler s(out, c, tau, grid.tol);

    std::vector<double> xs(grid.points);
    for (std::size_t i = 0; i < grid.points; ++i) {
        xs[i] = grid.points == 1 ? grid.x_min
                                 : grid.x_min + (grid.x_max - grid.x_min) * static_cast<double>(i) /
                                                    static_cast<double>(grid.points - 1);
    }

    for (double x : xs) {
        const auto rho = eval_rho(x, p, 3);
        s.less("rho_decreasing", x, *rho.deriv1, 0.0);
        s.greater("rho_convex", x, *rho.deriv2, 0.0);
        s.less("rho_schwarzian_negative", x, *rho.schwarzian, 0.0);
        if (x > 0.0) s.greater("rho_above_r", x, rho.value, eval_r(x, p));
        if (!critical) {
            if (x < 0.0) {
                s.less("A_minus_increasing_in_tau", x, eval_A_minus(x, p, grid.quad),
                       eval_A_minus(x, crit, grid.quad));
            }
            if (x > 0.0) {
                s.greater("A_plus_decreasing_in_tau", x, eval_A_plus(x, p).value, eval_A_plus(x, crit).value);
                s.greater("B_decreasing_in_tau", x, eval_B(x, p), eval_B(x, crit));
            }
        }
    }

    double prev = eval_D(xs.front(), p, grid.quad);
    for (std::size_t i = 1; i < xs.size(); ++i) {
        const double d = eval_D(xs[i], p, grid.quad);
        s.less("D_decreasing", xs[i], d, prev);
        prev = d;
    }

    if (critical) {
        for (double x : xs) {
            if (x <= 0.0) continue;
            s.greater("D_above_R", x, eval_D(x, p, grid.quad), eval_R(x, p));
            const double f = eval_F(x, p, grid.quad);
            s.less("F_below_identity", x, f, x);
            s.greater("F_positive", x, f, 0.0);
        }
    }
}

}  // namespace

std::size_t InvariantSuite::violations() const {
    std::size_t n = 0;
    for (const auto& t : tallies) n += t.violations;
    return n;
}

InvariantSuite verify_invariants(const InvariantGrid& grid, std::size_t workers) {
    if (grid.points < 2 || !(grid.x_max > grid.x_min)) {
        throw PreconditionError("invariant grid needs x_max > x_min and at least two points");
    }
    struct Pair {
        double c;
        double tau;
    };
    std::vector<Pair> pairs;
    for (double c : grid.c) {
        for (double tau : grid.tau) {
            ModelParams(c, tau).require_bounding_tau();
            pairs.push_back({c, tau});
        }
    }
    std::vector<std::vector<InvariantSample>> parts(pairs.size());
    parallel_for(
        pairs.size(), [&](std::size_t i) { sample_pair(grid, pairs[i].c, pairs[i].tau, parts[i]); }, workers);

    InvariantSuite suite;
    std::vector<std::string> order;
    std::map<std::string, InvariantTally> by_name;
    for (auto& part : parts) {
        for (auto& smp : part) {
            auto [it, fresh] = by_name.try_emplace(smp.name);
            auto& t = it->second;
            if (fresh) {
                order.push_back(smp.name);
                t.name = smp.name;
                t.worst_margin = smp.margin;
                t.worst_c = smp.c;
                t.worst_tau = smp.tau;
                t.worst_x = smp.x;
            }
            ++t.checked;
            if (!smp.pass) ++t.violations;
            if (smp.margin < t.worst_margin || !std::isfinite(smp.margin)) {
                t.worst_margin = smp.margin;
                t.worst_c = smp.c;
                t.worst_tau = smp.tau;
                t.worst_x = smp.x;
            }
            suite.samples.push_back(std::move(smp));
        }
    }
    for (const auto& name : order) suite.tallies.push_back(by_name[name]);
    return suite;
}

InvariantSuite verify_invariants(const InvariantGrid& grid) { return verify_invariants(grid, worker_count()); }

}  // namespace kpp::bounds
