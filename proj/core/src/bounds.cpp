#include "kpp/bounds.hpp"

#include <cmath>
#include <string>

#include "kpp/errors.hpp"
#include "kpp/schwarzian.hpp"

namespace kpp::bounds {

namespace {

void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) {
        throw DomainError(std::string(what) + ": argument must be finite");
    }
}

// (u - log1p(u)) without cancellation for small u.
double u_minus_log1p(double u) {
    if (std::abs(u) < 0.1) {
        double term = u * u;
        double sum = 0.0;
        for (int k = 2; k < 40; ++k) {
            const double add = ((k % 2 == 0) ? 1.0 : -1.0) * term / k;
            sum += add;
            if (std::abs(add) < 1e-18 * std::abs(sum)) break;
            term *= u;
        }
        return sum;
    }
    return u - std::log1p(u);
}

double taylor_a(double x, const ModelParams& p) {
    const auto jet = a_jet_at_origin(p);
    return jet.slope * x + 0.5 * jet.curvature * x * x;
}

double taylor_b(double x, const ModelParams& p) {
    const double tau = p.tau();
    const double alpha = pade_alpha(p);
    return -0.5 * tau * tau * x + alpha * tau * tau * (0.5 + tau / 3.0) * x * x;
}

}  // namespace

double eval_w(double x) { return std::expm1(-x); }

double eval_f(double y, const ModelParams& p) {
    const double c = p.c();
    const double disc = c * c + 4.0 * y;
    if (disc < 0.0) {
        throw DomainError("f(y) requires c^2 + 4y >= 0");
    }
    // (-c + sqrt(disc)) / 2 rewritten as 2y / (c + sqrt(disc)).
    return 2.0 * y / (c + std::sqrt(disc));
}

double eval_f_prime(double y, const ModelParams& p) {
    const double disc = p.c() * p.c() + 4.0 * y;
    if (disc <= 0.0) {
        throw DomainError("f'(y) requires c^2 + 4y > 0");
    }
    return 1.0 / std::sqrt(disc);
}

BoundEval eval_rho(double x, const ModelParams& p, int order) {
    require_finite(x, "rho");
    if (order < 0 || order > 3) {
        throw PreconditionError("rho derivative order must be in 0..3");
    }
    const double c = p.c();
    const double tc = p.tau() * c;
    const double w = eval_w(x);
    const double e = std::exp(-x);
    // c^2 + 4 w(x) = c^2 - 4 + 4 e^{-x} > 0 for c >= 2.
    const double s = std::sqrt(c * c - 4.0 + 4.0 * e);

    BoundEval out;
    out.x = x;
    out.value = tc * 2.0 * w / (c + s);
    if (order >= 1) out.deriv1 = -tc * e / s;
    if (order >= 2) out.deriv2 = tc * e * (c * c - 4.0 + 2.0 * e) / (s * s * s);
    if (order >= 3) {
        const double k = c * c - 4.0;
        const double numer = k * e + 2.0 * e * e;
        const double numer_prime = -k * e - 4.0 * e * e;
        const double s3 = s * s * s;
        out.deriv3 = tc * (numer_prime / s3 + 6.0 * e * numer / (s3 * s * s));
        out.schwarzian = schwarzian(Jet3{*out.deriv1, *out.deriv2, *out.deriv3});
    }
    return out;
}

double rho_at_infinity(const ModelParams& p) { return p.tau() * p.c() * eval_f(-1.0, p); }

double pade_alpha(const ModelParams& p) { return 0.5 * (1.0 - 2.0 / (p.c() * p.c())); }

double eval_r(double x, const ModelParams& p) {
    const double denom = 1.0 + pade_alpha(p) * x;
    if (std::abs(denom) < 1e-14) {
        throw PoleError("r(x) evaluated at its pole x = -1/alpha");
    }
    return -p.tau() * x / denom;
}

double integral_r(double x, const ModelParams& p) {
    const double alpha = pade_alpha(p);
    const double u = alpha * x;
    if (!(1.0 + u > 1e-14)) {
        throw PoleError("integral of r crosses the pole x = -1/alpha");
    }
    return p.tau() / (alpha * alpha) * u_minus_log1p(u);
}

double integral_rho(double x, const ModelParams& p, const QuadratureConfig& cfg) {
    require_finite(x, "integral_rho");
    if (x == 0.0) return 0.0;
    const auto integrand = [&p](double s) { return eval_rho(s, p).value; };
    return integrate(integrand, x, 0.0, cfg).value;
}

OriginJet a_jet_at_origin(const ModelParams& p) {
    const double tau = p.tau();
    return {0.5 - tau, (tau - 1.0 / 6.0) * (1.0 - 2.0 / (p.c() * p.c()))};
}

double eval_A_minus(double x, const ModelParams& p, const QuadratureConfig& cfg) {
    p.require_bounding_tau();
    require_finite(x, "A_minus");
    if (std::abs(x) <= kTaylorRadius) return taylor_a(x, p);
    const double rho = eval_rho(x, p).value;
    return x + rho + integral_rho(x, p, cfg) / rho;
}

FlaggedValue eval_A_plus(double x, const ModelParams& p) {
    p.require_bounding_tau();
    require_finite(x, "A_plus");
    const bool in_regime = x >= 0.0 && x <= eval_x2(p);
    if (std::abs(x) <= kTaylorRadius) return {taylor_a(x, p), in_regime};
    const double r = eval_r(x, p);
    return {x + r + integral_r(x, p) / r, in_regime};
}

double eval_B(double x, const ModelParams& p) {
    p.require_bounding_tau();
    require_finite(x, "B");
    if (x < 0.0) {
        throw DomainError("B(x) is defined for x >= 0");
    }
    if (x <= kTaylorRadius) return taylor_b(x, p);
    const double r = eval_r(x, p);
    return integral_r(-r, p) / r;
}

double eval_x2(const ModelParams& p) {
    p.require_bounding_tau();
    return (p.tau() - 1.0) / pade_alpha(p);
}

double eval_R(double x, const ModelParams& p) {
    p.require_bounding_tau();
    require_finite(x, "R");
    const auto jet = a_jet_at_origin(p);
    const double denom = 1.0 - 0.5 * jet.curvature * x / jet.slope;
    if (std::abs(denom) < 1e-12) {
        throw PoleError("R(x) evaluated at its pole");
    }
    return jet.slope * x / denom;
}

double eval_D(double x, const ModelParams& p, const QuadratureConfig& cfg) {
    p.require_bounding_tau();
    if (x <= 0.0) return eval_A_minus(x, p, cfg);
    if (x <= eval_x2(p)) return eval_A_plus(x, p).value;
    return eval_B(x, p);
}

double eval_A_minus_of_R(double x, const ModelParams& p, const QuadratureConfig& cfg) {
    return eval_A_minus(eval_R(x, p), p, cfg);
}

double eval_F(double x, const ModelParams& p, const QuadratureConfig& cfg) {
    p.require_critical_tau();
    require_finite(x, "F");
    if (x < 0.0) {
        throw DomainError("F(x) is defined for x >= 0");
    }
    if (x == 0.0) return 0.0;
    const double value = eval_A_minus_of_R(x, p, cfg);
    if (value >= x + kContractionSlack || value <= 0.0) {
        throw ConsistencyError("F(x) = " + std::to_string(value) + " leaves (0, x) at x = " +
                               std::to_string(x));
    }
    return value;
}

bool in_a_minus_domain(double x, const ModelParams& p) {
    if (x == 0.0) return true;
    return x / eval_rho(x, p).value > -1.0;
}

namespace detail {

double rho_crossing(const ModelParams& p) {
    if (p.tau() <= 1.0) {
        throw DomainError("-rho(x) = x has a positive solution only for tau > 1");
    }
    const auto gap = [&p](double x) { return x + eval_rho(x, p).value; };
    double lo = 1e-8;
    double hi = 1.0;
    while (gap(hi) < 0.0) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e6) throw ConvergenceError("no sign change for -rho(x) = x");
    }
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (gap(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace detail

}  // namespace kpp::bounds
