#pragma once

#include <optional>

#include "kpp/params.hpp"
#include "kpp/quadrature.hpp"

/// Bounding-function calculus for the log-transformed profile equation.
///
/// All functions are pure. The ones that need the delay window tau in (1, 3/2]
/// (A_-, A_+, B, R, D) throw DomainError outside it; F additionally requires
/// tau == 3/2.
namespace kpp::bounds {

/// Radius around x = 0 inside which A_-, A_+, B and D switch to their 2-jet.
inline constexpr double kTaylorRadius = 1e-4;

/// Slack granted to the F(x) < x consistency assertion.
inline constexpr double kContractionSlack = 1e-9;

struct BoundEval {
    double x = 0.0;
    double value = 0.0;
    std::optional<double> deriv1;
    std::optional<double> deriv2;
    std::optional<double> deriv3;
    std::optional<double> schwarzian;
};

/// A value together with whether the argument lies in the regime the
/// formula is used on downstream.
struct FlaggedValue {
    double value = 0.0;
    bool in_regime = true;
};

/// w(x) = e^{-x} - 1, evaluated with expm1.
double eval_w(double x);

/// Larger root of z^2 + c z - y = 0. Throws DomainError when c^2 + 4y < 0.
double eval_f(double y, const ModelParams& p);
double eval_f_prime(double y, const ModelParams& p);

/// rho(x) = tau c f(w(x)) with derivatives up to `order` (0..3). The
/// Schwarzian is filled when order == 3.
BoundEval eval_rho(double x, const ModelParams& p, int order = 0);

/// Limit of rho at +infinity, tau c f(-1).
double rho_at_infinity(const ModelParams& p);

/// alpha = (1 - 2/c^2) / 2, the curvature coefficient of the Pade minorant.
double pade_alpha(const ModelParams& p);

/// r(x) = -tau x / (1 + alpha x). Throws PoleError at x = -1/alpha.
double eval_r(double x, const ModelParams& p);

/// Integral of r from x to 0, closed form. Throws PoleError if [x, 0]
/// touches the pole.
double integral_r(double x, const ModelParams& p);

/// Integral of rho from x to 0 by adaptive Gauss-Legendre quadrature.
double integral_rho(double x, const ModelParams& p, const QuadratureConfig& cfg = {});

/// Slope and curvature shared by A_- and A_+ at the origin.
struct OriginJet {
    double slope;
    double curvature;
};
OriginJet a_jet_at_origin(const ModelParams& p);

double eval_A_minus(double x, const ModelParams& p, const QuadratureConfig& cfg = {});

/// A_+ is used on [0, x2]; outside that range the value is still computed
/// but `in_regime` is false.
FlaggedValue eval_A_plus(double x, const ModelParams& p);

/// B(x), defined for x >= 0.
double eval_B(double x, const ModelParams& p);

/// Unique positive solution of -r(x) = x, namely (tau - 1) / alpha.
double eval_x2(const ModelParams& p);

/// Mobius map with the 2-jet of A_+ at the origin. Throws PoleError at its
/// (negative) pole.
double eval_R(double x, const ModelParams& p);

/// Piecewise D: A_- on x <= 0, A_+ on [0, x2], B beyond x2.
double eval_D(double x, const ModelParams& p, const QuadratureConfig& cfg = {});

/// A_-(R(x)) without the domain restriction or the contraction assertion;
/// used for derivative stencils that straddle 0.
double eval_A_minus_of_R(double x, const ModelParams& p, const QuadratureConfig& cfg = {});

/// F(x) = A_-(R(x)) for x >= 0 at tau = 3/2. Throws ConsistencyError if the
/// result leaves (0, x) by more than kContractionSlack.
double eval_F(double x, const ModelParams& p, const QuadratureConfig& cfg = {});

/// True when x / rho(x) > -1, the set on which A_- is decreasing with
/// negative Schwarzian.
bool in_a_minus_domain(double x, const ModelParams& p);

namespace detail {
/// Positive solution of -rho(x) = x (bisection).
double rho_crossing(const ModelParams& p);
}  // namespace detail

}  // namespace kpp::bounds
