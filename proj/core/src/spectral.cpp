#include "kpp/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "kpp/errors.hpp"

namespace kpp::spectral {

Complex char_eval(Complex lambda, const ModelParams& p) {
    return lambda * lambda - p.c() * lambda - std::exp(-lambda * p.h());
}

Complex char_deriv(Complex lambda, const ModelParams& p) {
    return 2.0 * lambda - p.c() + p.h() * std::exp(-lambda * p.h());
}

double rhp_root_bound(const ModelParams& p) {
    const double c = p.c();
    return 0.5 * (c + std::sqrt(c * c + 4.0));
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct EdgeAccumulator {
    const ModelParams& p;
    const CountOptions& opts;
    double phase = 0.0;
    double min_modulus = std::numeric_limits<double>::infinity();
    bool unresolved = false;

    void segment(Complex za, Complex fa, Complex zb, Complex fb, int depth) {
        const double step = std::arg(fb / fa);
        if (std::abs(step) > opts.max_phase_step) {
            if (depth >= opts.max_bisection_depth) {
                unresolved = true;
                phase += step;
                return;
            }
            const Complex zm = 0.5 * (za + zb);
            const Complex fm = char_eval(zm, p);
            min_modulus = std::min(min_modulus, std::abs(fm));
            segment(za, fa, zm, fm, depth + 1);
            segment(zm, fm, zb, fb, depth + 1);
            return;
        }
        phase += step;
    }
};

Winding winding_with_samples(const ModelParams& p, const Rect& r, const CountOptions& opts,
                             int samples, bool& unresolved) {
    const Complex corners[5] = {{r.re_min, r.im_min}, {r.re_max, r.im_min}, {r.re_max, r.im_max},
                                {r.re_min, r.im_max}, {r.re_min, r.im_min}};
    EdgeAccumulator acc{p, opts};
    for (int e = 0; e < 4; ++e) {
        const Complex a = corners[e];
        const Complex b = corners[e + 1];
        Complex z_prev = a;
        Complex f_prev = char_eval(a, p);
        acc.min_modulus = std::min(acc.min_modulus, std::abs(f_prev));
        for (int k = 1; k <= samples; ++k) {
            const Complex z = a + (b - a) * (static_cast<double>(k) / samples);
            const Complex f = char_eval(z, p);
            acc.min_modulus = std::min(acc.min_modulus, std::abs(f));
            acc.segment(z_prev, f_prev, z, f, 0);
            z_prev = z;
            f_prev = f;
        }
    }
    unresolved = acc.unresolved;
    return {acc.phase / kTwoPi, acc.min_modulus};
}

bool near_integer(double w) { return std::abs(w - std::round(w)) < 0.25; }

// Count on a rectangle that may be asked to sit near roots; returns -1 when
// the contour passes within min_contour_modulus of one.
int try_count(const ModelParams& p, const Rect& r, const CountOptions& opts, double* winding_out) {
    const auto w = winding_number(p, r, opts);
    if (winding_out) *winding_out = w.winding;
    if (w.min_modulus < opts.min_contour_modulus) return -1;
    return static_cast<int>(std::lround(w.winding));
}

bool inside(Complex z, const Rect& r, double pad) {
    return z.real() >= r.re_min - pad && z.real() <= r.re_max + pad && z.imag() >= r.im_min - pad &&
           z.imag() <= r.im_max + pad;
}

void locate(const ModelParams& p, const Rect& r, int count, const CountOptions& opts,
            std::vector<Complex>& roots, int depth) {
    if (count <= 0) return;
    const double width = r.re_max - r.re_min;
    const double height = r.im_max - r.im_min;
    const Complex centre{0.5 * (r.re_min + r.re_max), 0.5 * (r.im_min + r.im_max)};

    if (count == 1 || depth > 40 || std::max(width, height) < 1e-9) {
        const Complex z = polish_root(centre, p);
        const double pad = 1e-9 * (1.0 + std::max(width, height));
        if (std::abs(char_eval(z, p)) < opts.root_tolerance && inside(z, r, pad)) {
            for (int k = 0; k < count; ++k) roots.push_back(z);
            return;
        }
        if (depth > 40 || std::max(width, height) < 1e-9) {
            throw ConvergenceError("root polishing failed inside a counted box");
        }
    }

    // Quarter the box; nudge the split lines off any root they hit.
    const double offsets[] = {0.5, 0.5 + 0.0137, 0.5 - 0.0291, 0.5 + 0.0613};
    for (double f : offsets) {
        const double re_mid = r.re_min + f * width;
        const double im_mid = r.im_min + (1.0 - f) * height;
        const Rect quads[4] = {{r.re_min, re_mid, r.im_min, im_mid},
                               {re_mid, r.re_max, r.im_min, im_mid},
                               {r.re_min, re_mid, im_mid, r.im_max},
                               {re_mid, r.re_max, im_mid, r.im_max}};
        int counts[4];
        int total = 0;
        bool ok = true;
        for (int q = 0; q < 4 && ok; ++q) {
            counts[q] = try_count(p, quads[q], opts, nullptr);
            ok = counts[q] >= 0;
            total += counts[q];
        }
        if (!ok || total != count) continue;
        for (int q = 0; q < 4; ++q) locate(p, quads[q], counts[q], opts, roots, depth + 1);
        return;
    }
    throw ContourError("could not split a counted box cleanly");
}

}  // namespace

Winding winding_number(const ModelParams& p, const Rect& rect, const CountOptions& opts) {
    int samples = opts.samples_per_edge;
    Winding w;
    for (int refine = 0; refine <= opts.max_refinements; ++refine) {
        bool unresolved = false;
        w = winding_with_samples(p, rect, opts, samples, unresolved);
        if (!unresolved && near_integer(w.winding)) return w;
        samples *= 2;
    }
    if (w.min_modulus < opts.min_contour_modulus) return w;
    throw ContourError("winding number did not settle near an integer");
}

RootCountResult count_rhp_roots(const ModelParams& p, const CountOptions& opts) {
    const double extent = p.c() + 2.0;
    Rect rect{0.0, extent, -extent, extent};
    RootCountResult out;
    for (int attempt = 0; attempt <= opts.max_retries; ++attempt) {
        const auto w = winding_number(p, rect, opts);
        if (w.min_modulus >= opts.min_contour_modulus) {
            out.count = static_cast<int>(std::lround(w.winding));
            out.winding_integral = w.winding;
            out.contour = rect;
            out.retries = attempt;
            if (opts.locate_roots) {
                locate(p, rect, out.count, opts, out.roots, 0);
                std::sort(out.roots.begin(), out.roots.end(), [](Complex a, Complex b) {
                    return a.real() != b.real() ? a.real() > b.real() : a.imag() < b.imag();
                });
            }
            return out;
        }
        rect.re_min -= opts.inflation;
        rect.re_max += opts.inflation;
        rect.im_min -= opts.inflation;
        rect.im_max += opts.inflation;
    }
    throw ContourError("characteristic root stays on the counting contour");
}

Complex polish_root(Complex seed, const ModelParams& p, int max_iterations) {
    Complex z = seed;
    for (int it = 0; it < max_iterations; ++it) {
        const Complex f = char_eval(z, p);
        const Complex df = char_deriv(z, p);
        if (std::abs(df) == 0.0) break;
        const Complex dz = f / df;
        z -= dz;
        if (std::abs(dz) < 1e-15 * std::max(1.0, std::abs(z))) break;
    }
    return z;
}

CrossingPoint hopf_boundary(double c) {
    if (!(c >= 2.0)) throw DomainError("hopf_boundary needs c >= 2");
    // lambda = i omega:  cos(omega h) = -omega^2,  sin(omega h) = c omega,
    // so omega^4 + c^2 omega^2 = 1.
    const double c2 = c * c;
    const double omega2 = 2.0 / (c2 + std::sqrt(c2 * c2 + 4.0));
    const double omega = std::sqrt(omega2);
    const double angle = std::atan2(c * omega, -omega2);
    return {c, angle / (c * omega), omega};
}

CrossingBracket bisect_crossing(double c, double tau_lo, double tau_hi, double width,
                                const CountOptions& opts) {
    CountOptions count_opts = opts;
    count_opts.locate_roots = false;
    const auto count_at = [&](double tau) { return count_rhp_roots(ModelParams(c, tau), count_opts).count; };
    CrossingBracket b{tau_lo, tau_hi, count_at(tau_lo), count_at(tau_hi)};
    if (b.count_lo == b.count_hi) {
        throw PreconditionError("bisect_crossing: counts at the bracket ends agree");
    }
    while (b.tau_hi - b.tau_lo > width) {
        const double mid = b.midpoint();
        const int k = count_at(mid);
        if (k == b.count_lo) {
            b.tau_lo = mid;
        } else {
            b.tau_hi = mid;
            b.count_hi = k;
        }
    }
    return b;
}

DecayRates decay_rates(const ModelParams& p) {
    const double c = p.c();
    const double disc = c * c - 4.0;
    if (disc <= 0.0) return {1.0, 1.0, true};
    const double fast = 0.5 * (c + std::sqrt(disc));
    return {1.0 / fast, fast, false};
}

}  // namespace kpp::spectral
