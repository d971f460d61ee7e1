#pragma once

#include <functional>

#include "kpp/params.hpp"

namespace kpp {

/// First three derivatives at a point.
struct Jet3 {
    double d1 = 0.0;
    double d2 = 0.0;
    double d3 = 0.0;
};

inline constexpr double kMinSchwarzianSlope = 1e-12;

/// S f = f'''/f' - 3/2 (f''/f')^2. Throws DegenerateDerivativeError when
/// |f'| < kMinSchwarzianSlope.
double schwarzian(const Jet3& jet);

/// Central-difference jet with one Richardson step. The base step is
/// rel_step * max(1, |x|); the stencil reaches x +- 2 * step.
Jet3 finite_difference_jet(const std::function<double(double)>& f, double x,
                           double rel_step = 1e-2);

/// Schwarzian of a callable from its finite-difference jet.
double schwarzian(const std::function<double(double)>& f, double x, double rel_step = 1e-2);

namespace bounds {
/// Analytic jets for the two maps the calculus differentiates in closed form.
Jet3 rho_jet(double x, const ModelParams& p);
Jet3 R_jet(double x, const ModelParams& p);
}  // namespace bounds

}  // namespace kpp
