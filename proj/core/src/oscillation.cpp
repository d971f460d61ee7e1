#include <algorithm>
#include <cmath>
#include <limits>

#include "kpp/oscillation.hpp"

namespace kpp::osc {

namespace {

struct Zero {
    double position;
    std::size_t after;  // first node on the far side of the sign change
};

std::vector<Zero> sign_changes(const LogProfile& lp) {
    std::vector<Zero> zeros;
    const auto& x = lp.x;
    int last_sign = 0;
    std::size_t last_index = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const int sign = (x[i] > 0.0) - (x[i] < 0.0);
        if (sign == 0) continue;
        if (last_sign != 0 && sign != last_sign) {
            const double a = x[last_index];
            const double b = x[i];
            const double t = lp.grid.at(last_index) +
                             a / (a - b) * (lp.grid.at(i) - lp.grid.at(last_index));
            zeros.push_back({t, i});
        }
        last_sign = sign;
        last_index = i;
    }
    return zeros;
}

// Vertex of the parabola through (k-1, k, k+1), as (offset in steps, value).
std::pair<double, double> parabola_vertex(const std::vector<double>& v, std::size_t k) {
    if (k == 0 || k + 1 >= v.size()) return {0.0, v[k]};
    const double a = v[k - 1];
    const double b = v[k];
    const double c = v[k + 1];
    const double curv = a - 2.0 * b + c;
    if (curv == 0.0) return {0.0, b};
    const double delta = std::clamp(0.5 * (a - c) / curv, -0.5, 0.5);
    return {delta, b - 0.25 * (a - c) * delta};
}

// Sign changes of forward differences of v on nodes [lo, hi].
int count_local_extrema(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
    int changes = 0;
    int last = 0;
    for (std::size_t i = lo; i < hi; ++i) {
        const double d = v[i + 1] - v[i];
        const int sign = (d > 0.0) - (d < 0.0);
        if (sign == 0) continue;
        if (last != 0 && sign != last) ++changes;
        last = sign;
    }
    return changes;
}

}  // namespace

OscillationRecord extract_oscillation(const LogProfile& lp, double noise_floor) {
    OscillationRecord rec;
    const auto zeros = sign_changes(lp);
    const auto& x = lp.x;
    const double s = lp.grid.step;

    for (std::size_t j = 0; j + 1 < zeros.size(); ++j) {
        const std::size_t lo = zeros[j].after;
        const std::size_t hi = zeros[j + 1].after - 1;
        if (hi < lo) continue;
        std::size_t k = lo;
        for (std::size_t i = lo; i <= hi; ++i) {
            if (std::abs(x[i]) > std::abs(x[k])) k = i;
        }
        if (std::abs(x[k]) < noise_floor) break;
        const auto [delta, value] = parabola_vertex(x, k);
        if (rec.Q.empty()) rec.Q.push_back(zeros[j].position);
        rec.Q.push_back(zeros[j + 1].position);
        rec.T.push_back(lp.grid.at(k) + delta * s);
        rec.V.push_back(value);
        rec.T_index.push_back(k);
        const std::size_t from = lo > 0 ? lo - 1 : lo;
        rec.extrema_per_interval.push_back(count_local_extrema(x, from, std::min(hi + 1, x.size() - 1)));
    }

    for (std::size_t j = 0; j + 1 < rec.T_index.size(); ++j) {
        const std::size_t a = rec.T_index[j];
        const std::size_t b = rec.T_index[j + 1];
        std::size_t k = a;
        const bool minimum = rec.V[j] > 0.0;
        for (std::size_t i = a; i <= b; ++i) {
            if (minimum ? lp.y[i] < lp.y[k] : lp.y[i] > lp.y[k]) k = i;
        }
        const auto [delta, value] = parabola_vertex(lp.y, k);
        (void)value;
        rec.critical.push_back(lp.grid.at(k) + delta * s);
        rec.critical_index.push_back(k);
        rec.critical_per_interval.push_back(count_local_extrema(lp.y, a, b));
    }

    if (rec.T_index.size() >= 2) {
        // phi'' sign changes; second differences at roundoff level are skipped.
        const double floor = 64.0 * std::numeric_limits<double>::epsilon() / (s * s);
        const std::size_t a = rec.T_index.front();
        const std::size_t b = rec.T_index.back();
        int last_sign = 0;
        double last_t = 0.0;
        double last_val = 0.0;
        for (std::size_t i = std::max<std::size_t>(a, 1); i <= b && i + 1 < x.size(); ++i) {
            const double d2 = (std::exp(-x[i + 1]) - 2.0 * std::exp(-x[i]) + std::exp(-x[i - 1])) / (s * s);
            if (std::abs(d2) < floor) continue;
            const int sign = d2 > 0.0 ? 1 : -1;
            const double t = lp.grid.at(i);
            if (last_sign != 0 && sign != last_sign) {
                rec.inflections.push_back(last_t + last_val / (last_val - d2) * (t - last_t));
            }
            last_sign = sign;
            last_t = t;
            last_val = d2;
        }
    }
    return rec;
}

}  // namespace kpp::osc
