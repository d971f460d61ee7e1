#pragma once

#include <complex>
#include <vector>

#include "kpp/params.hpp"

/// Characteristic quasi-polynomial chi(lambda) = lambda^2 - c lambda - e^{-lambda c tau}
/// of the profile equation linearised about phi = 1.
namespace kpp::spectral {

using Complex = std::complex<double>;

Complex char_eval(Complex lambda, const ModelParams& p);
Complex char_deriv(Complex lambda, const ModelParams& p);

struct Rect {
    double re_min = 0.0;
    double re_max = 0.0;
    double im_min = 0.0;
    double im_max = 0.0;
};

struct CountOptions {
    int samples_per_edge = 512;
    /// Largest phase increment accepted between neighbouring samples.
    double max_phase_step = 0.4;
    int max_bisection_depth = 40;
    int max_refinements = 3;
    int max_retries = 5;
    double min_contour_modulus = 1e-8;
    double inflation = 1e-3;
    bool locate_roots = true;
    double root_tolerance = 1e-10;
};

struct RootCountResult {
    int count = 0;
    Rect contour;
    double winding_integral = 0.0;
    std::vector<Complex> roots;
    int retries = 0;
};

/// Any root with Re lambda >= 0 obeys |lambda| <= (c + sqrt(c^2 + 4)) / 2 < c + 1.
double rhp_root_bound(const ModelParams& p);

/// Winding number of chi around the rectangle (counter-clockwise), from
/// adaptively refined phase increments. Also reports the smallest |chi| seen.
struct Winding {
    double winding = 0.0;
    double min_modulus = 0.0;
};
Winding winding_number(const ModelParams& p, const Rect& rect, const CountOptions& opts = {});

/// Roots in the closed right half-plane, counted on [0, c+2] x [-(c+2), c+2].
/// Throws ContourError if a root stays on the contour after max_retries
/// inflations, or if the winding does not settle near an integer.
RootCountResult count_rhp_roots(const ModelParams& p, const CountOptions& opts = {});

/// Newton polishing from a seed; returns the final iterate.
Complex polish_root(Complex seed, const ModelParams& p, int max_iterations = 60);

/// Delay at which a conjugate pair of roots reaches the imaginary axis.
struct CrossingPoint {
    double c = 0.0;
    double tau_star = 0.0;
    double omega = 0.0;
};
CrossingPoint hopf_boundary(double c);

/// Bracket [tau_lo, tau_hi] of width <= `width` across which the right
/// half-plane count changes, found by bisection on the argument-principle
/// count. Requires count(tau_lo) != count(tau_hi).
struct CrossingBracket {
    double tau_lo = 0.0;
    double tau_hi = 0.0;
    int count_lo = 0;
    int count_hi = 0;
    double midpoint() const { return 0.5 * (tau_lo + tau_hi); }
};
CrossingBracket bisect_crossing(double c, double tau_lo, double tau_hi, double width = 1e-4,
                                const CountOptions& opts = {});

/// Roots of lambda^2 - c lambda + 1 = 0 (linearisation about phi = 0).
struct DecayRates {
    double slow = 1.0;
    double fast = 1.0;
    bool double_root = true;
};
DecayRates decay_rates(const ModelParams& p);

}  // namespace kpp::spectral
