#include "kpp/schwarzian.hpp"

#include <algorithm>
#include <cmath>

#include "kpp/bounds.hpp"
#include "kpp/errors.hpp"

namespace kpp {

double schwarzian(const Jet3& jet) {
    if (!(std::abs(jet.d1) >= kMinSchwarzianSlope)) {
        throw DegenerateDerivativeError("Schwarzian undefined: |f'| below 1e-12");
    }
    const double q = jet.d2 / jet.d1;
    return jet.d3 / jet.d1 - 1.5 * q * q;
}

namespace {

Jet3 central_jet(const std::function<double(double)>& f, double x, double h) {
    const double fm2 = f(x - 2.0 * h);
    const double fm1 = f(x - h);
    const double f0 = f(x);
    const double fp1 = f(x + h);
    const double fp2 = f(x + 2.0 * h);
    return {(fp1 - fm1) / (2.0 * h), (fp1 - 2.0 * f0 + fm1) / (h * h),
            (fp2 - 2.0 * fp1 + 2.0 * fm1 - fm2) / (2.0 * h * h * h)};
}

}  // namespace

Jet3 finite_difference_jet(const std::function<double(double)>& f, double x, double rel_step) {
    const double h = rel_step * std::max(1.0, std::abs(x));
    const Jet3 coarse = central_jet(f, x, h);
    const Jet3 fine = central_jet(f, x, 0.5 * h);
    // All three stencils have an h^2 leading error term.
    return {(4.0 * fine.d1 - coarse.d1) / 3.0, (4.0 * fine.d2 - coarse.d2) / 3.0,
            (4.0 * fine.d3 - coarse.d3) / 3.0};
}

double schwarzian(const std::function<double(double)>& f, double x, double rel_step) {
    return schwarzian(finite_difference_jet(f, x, rel_step));
}

namespace bounds {

Jet3 rho_jet(double x, const ModelParams& p) {
    const auto e = eval_rho(x, p, 3);
    return {*e.deriv1, *e.deriv2, *e.deriv3};
}

Jet3 R_jet(double x, const ModelParams& p) {
    p.require_bounding_tau();
    const auto jet = a_jet_at_origin(p);
    // R(x) = a x / (1 + b x)
    const double a = jet.slope;
    const double b = -0.5 * jet.curvature / jet.slope;
    const double d = 1.0 + b * x;
    if (std::abs(d) < 1e-12) {
        throw PoleError("R jet evaluated at its pole");
    }
    return {a / (d * d), -2.0 * a * b / (d * d * d), 6.0 * a * b * b / (d * d * d * d)};
}

}  // namespace bounds

}  // namespace kpp
