#include "kpp/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "kpp/errors.hpp"

namespace kpp {

void QuadratureConfig::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
        throw PreconditionError("quadrature tolerances must be strictly positive");
    }
    if (max_subdivisions < 1) {
        throw PreconditionError("quadrature needs max_subdivisions >= 1");
    }
}

namespace {

template <int N>
GaussLegendreRule<N> build_rule() {
    GaussLegendreRule<N> rule;
    const int half = (N + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (N + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0;
            double p1 = 0.0;
            for (int k = 0; k < N; ++k) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * k + 1.0) * z * p1 - k * p2) / (k + 1.0);
            }
            dp = N * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        rule.nodes[i] = -z;
        rule.nodes[N - 1 - i] = z;
        const double w = 2.0 / ((1.0 - z * z) * dp * dp);
        rule.weights[i] = w;
        rule.weights[N - 1 - i] = w;
    }
    return rule;
}

struct Panel {
    double a;
    double b;
    double value;
    double error;
    bool operator<(const Panel& other) const { return error < other.error; }
};

double apply_rule(const std::function<double(double)>& f, double a, double b) {
    const auto& rule = gauss_legendre_15();
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (int i = 0; i < 15; ++i) {
        sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    }
    return sum * half;
}

Panel make_panel(const std::function<double(double)>& f, double a, double b) {
    const double whole = apply_rule(f, a, b);
    const double mid = 0.5 * (a + b);
    const double split = apply_rule(f, a, mid) + apply_rule(f, mid, b);
    return {a, b, split, std::abs(split - whole)};
}

}  // namespace

const GaussLegendreRule<15>& gauss_legendre_15() {
    static const GaussLegendreRule<15> rule = build_rule<15>();
    return rule;
}

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureConfig& cfg) {
    cfg.validate();
    if (a == b) return {};
    if (!std::isfinite(a) || !std::isfinite(b)) {
        throw PreconditionError("integration limits must be finite");
    }

    std::vector<Panel> panels{make_panel(f, a, b)};
    double total = panels.front().value;
    double error = panels.front().error;

    int bisections = 0;
    while (error > std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total))) {
        if (!std::isfinite(total)) {
            throw ToleranceError("integrand is not finite on the integration interval");
        }
        if (bisections >= cfg.max_subdivisions) {
            throw ToleranceError("quadrature tolerance not met after " +
                                 std::to_string(bisections) + " subdivisions");
        }
        auto worst = std::max_element(panels.begin(), panels.end());
        const Panel parent = *worst;
        const double mid = 0.5 * (parent.a + parent.b);
        *worst = make_panel(f, parent.a, mid);
        const Panel right = make_panel(f, mid, parent.b);
        total += worst->value + right.value - parent.value;
        error += worst->error + right.error - parent.error;
        panels.push_back(right);
        ++bisections;
    }
    return {total, error, static_cast<int>(panels.size())};
}

}  // namespace kpp
