#pragma once

#include <array>
#include <functional>

namespace kpp {

struct QuadratureConfig {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_subdivisions = 64;

    /// Throws PreconditionError on non-positive tolerances or budget.
    void validate() const;
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int panels = 0;
};

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
template <int N>
struct GaussLegendreRule {
    std::array<double, N> nodes{};
    std::array<double, N> weights{};
};

/// 15-point rule, computed once by Newton iteration on P_15.
const GaussLegendreRule<15>& gauss_legendre_15();

/// Adaptive Gauss-Legendre quadrature of f over [a, b] (a > b allowed, the
/// sign follows the orientation). Each panel is estimated with the 15-point
/// rule and its error with the difference against the two half-panels; the
/// worst panel is bisected until the summed estimate falls below
/// max(abs_tol, rel_tol * |I|). Throws ToleranceError if max_subdivisions
/// bisections are not enough.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureConfig& cfg = {});

}  // namespace kpp
