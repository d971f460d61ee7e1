#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "kpp/bounds.hpp"
#include "kpp/errors.hpp"
#include "kpp/oscillation.hpp"

namespace kpp::osc {

namespace {

std::string index_label(const char* name, std::size_t j) { return std::string(name) + "=" + std::to_string(j); }

std::string span_label(std::size_t a, std::size_t b) {
    return "[T_" + std::to_string(a) + ",T_" + std::to_string(b) + "]";
}

}  // namespace

void CertificationReport::add_upper(std::string name, std::string interval, double lhs, double rhs,
                                    double slack) {
    Check c{std::move(name), std::move(interval), lhs, rhs, rhs - lhs, false};
    c.pass = c.margin > -slack;
    add(std::move(c));
}

void CertificationReport::add_lower(std::string name, std::string interval, double lhs, double rhs,
                                    double slack) {
    Check c{std::move(name), std::move(interval), lhs, rhs, lhs - rhs, false};
    c.pass = c.margin > -slack;
    add(std::move(c));
}

void CertificationReport::add(Check check) {
    if (!std::isfinite(check.margin)) check.pass = false;
    overall = overall && check.pass;
    checks.push_back(std::move(check));
}

void CertificationReport::merge(const CertificationReport& other) {
    for (const auto& c : other.checks) add(c);
    overall = overall && other.overall;
    if (!other.notes.empty()) notes += (notes.empty() ? "" : "; ") + other.notes;
}

std::size_t CertificationReport::failures() const {
    return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.pass; }));
}

CertificationReport verify_slope_bounds(const LogProfile& lp, const OscillationRecord& rec, double tol) {
    CertificationReport report;
    if (rec.empty()) return report;
    const ModelParams& p = lp.params;
    const double c = p.c();
    auto lambda2 = [&](std::size_t i) { return bounds::eval_f(lp.g[i], p); };

    if (p.h() > 0.0) {
        double worst = 0.0;
        for (std::size_t i = 0; i < lp.x.size(); ++i) {
            const double rho = bounds::eval_rho(lp.delayed_x(i), p).value / p.h();
            worst = std::max(worst, std::abs(rho - lambda2(i)));
        }
        report.add_upper("rho_over_h_identity", "all nodes", worst, 1e-12, 0.0);
    }

    if (rec.T_index.size() >= 2) {
        double worst = std::numeric_limits<double>::infinity();
        double at_y = 0.0;
        double at_l = 0.0;
        for (std::size_t i = rec.T_index.front(); i <= rec.T_index.back(); ++i) {
            const double l1 = -c - lambda2(i);
            if (lp.y[i] - l1 < worst) {
                worst = lp.y[i] - l1;
                at_y = lp.y[i];
                at_l = l1;
            }
        }
        report.add_lower("y_above_lambda1", span_label(0, rec.T_index.size() - 1), at_y, at_l, tol);
    }

    for (std::size_t k = 0; k + 1 < rec.T_index.size() && k < rec.critical_index.size(); ++k) {
        const bool rising_after_min = rec.V[k] > 0.0;  // [T_{2j+1}, T_{2j+2}]
        if (!rising_after_min && k == 0) continue;      // the dual bound starts at j = 1
        const std::size_t from = rec.critical_index[k] + 1;
        const std::size_t to = rec.T_index[k + 1];
        const std::string span = span_label(k, k + 1);
        report.add_upper(rising_after_min ? "y_unique_minimum" : "y_unique_maximum", span,
                         rec.critical_per_interval[k], 1.0, 0.5);
        if (from >= to) continue;
        double worst = std::numeric_limits<double>::infinity();
        double at_y = 0.0;
        double at_l = 0.0;
        for (std::size_t i = from; i < to; ++i) {
            const double l2 = lambda2(i);
            const double margin = rising_after_min ? lp.y[i] - l2 : l2 - lp.y[i];
            if (margin < worst) {
                worst = margin;
                at_y = lp.y[i];
                at_l = l2;
            }
        }
        if (rising_after_min) {
            report.add_lower("y_above_rho_over_h", span, at_y, at_l, tol);
        } else {
            report.add_upper("y_below_rho_over_h", span, at_y, at_l, tol);
        }
    }
    return report;
}

CertificationReport verify_amplitude_bounds(const OscillationRecord& rec, const ModelParams& p, double tol,
                                            const QuadratureConfig& quad) {
    CertificationReport report;
    if (p.tau() > kCriticalTau) {
        throw DomainError("amplitude recursions need tau <= 3/2, got " + std::to_string(p.tau()));
    }
    if (p.tau() <= 1.0) {
        report.trivially_certified = true;
        report.notes = "trivially certified (tau <= 1)";
        return report;
    }
    if (rec.empty()) return report;

    const auto& V = rec.V;
    const double x2 = bounds::eval_x2(p);
    report.add_lower("V0_lower", "j=0", V[0], -p.c() * p.h(), tol);

    auto guarded = [&](const char* name, std::string where, double lhs, auto&& bound, bool upper) {
        try {
            const double rhs = bound();
            if (upper) {
                report.add_upper(name, std::move(where), lhs, rhs, tol);
            } else {
                report.add_lower(name, std::move(where), lhs, rhs, tol);
            }
        } catch (const Error& e) {
            report.add({name, std::move(where), lhs, std::numeric_limits<double>::quiet_NaN(),
                        -std::numeric_limits<double>::infinity(), false});
            report.notes += (report.notes.empty() ? "" : "; ") + std::string(e.what());
        }
    };

    for (std::size_t k = 0; k + 1 < V.size(); ++k) {
        const std::string link = std::to_string(k) + "->" + std::to_string(k + 1);
        const double prev = V[k];
        if (k % 2 == 0) {
            guarded("V_odd_le_A_minus", link, V[k + 1], [&] { return bounds::eval_A_minus(prev, p, quad); }, true);
        } else {
            guarded("V_even_ge_B", link, V[k + 1], [&] { return bounds::eval_B(prev, p); }, false);
            if (prev <= x2) {
                guarded("V_even_ge_A_plus", link, V[k + 1], [&] { return bounds::eval_A_plus(prev, p).value; },
                        false);
            }
        }
    }
    return report;
}

CertificationReport verify_structure(const OscillationRecord& rec, const ModelParams& p) {
    CertificationReport report;
    const auto& V = rec.V;
    std::size_t bad_sign = 0;
    for (std::size_t k = 0; k < V.size(); ++k) {
        const bool expect_negative = k % 2 == 0;
        if ((V[k] < 0.0) != expect_negative) ++bad_sign;
    }
    report.add_upper("V_alternates", "all", static_cast<double>(bad_sign), 0.0, 0.5);

    for (std::size_t k = 0; k < V.size(); ++k) {
        const double n = rec.extrema_per_interval[k];
        report.add({"one_extremum", index_label("j", k), n, 1.0, -std::abs(n - 1.0), n == 1.0});
    }
    for (std::size_t k = 0; k < V.size(); ++k) {
        Check c{"T_minus_Q_lt_h", index_label("j", k), rec.T[k] - rec.Q[k], p.h(), p.h() - (rec.T[k] - rec.Q[k]), false};
        c.pass = c.margin > 0.0;
        report.add(std::move(c));
    }

    if (V.size() >= 4) {
        double worst = std::numeric_limits<double>::infinity();
        for (std::size_t k = V.size() - 3; k < V.size(); ++k) {
            worst = std::min(worst, std::abs(V[k - 1]) - std::abs(V[k]));
        }
        Check c{"tail_amplitude_decreasing", "last 4", worst, 0.0, worst, worst > 0.0};
        report.add(std::move(c));
    } else {
        report.add({"tail_amplitude_decreasing", "last 4", 0.0, 0.0, -1.0, false});
    }

    return report;
}

TailLimits estimate_limits(const OscillationRecord& rec) {
    TailLimits out;
    const auto& V = rec.V;
    if (V.empty()) return out;
    if (V.size() < 4) {
        const std::size_t from = V.size() >= 2 ? V.size() - 2 : 0;
        out.m_star = std::min(0.0, *std::min_element(V.begin() + static_cast<std::ptrdiff_t>(from), V.end()));
        out.M_star = std::max(0.0, *std::max_element(V.begin() + static_cast<std::ptrdiff_t>(from), V.end()));
        out.low_confidence = true;
        out.window = V.size() - from;
        return out;
    }
    out.window = std::max<std::size_t>(2, (V.size() + 3) / 4);
    const auto first = V.end() - static_cast<std::ptrdiff_t>(out.window);
    out.m_star = *std::min_element(first, V.end());
    out.M_star = *std::max_element(first, V.end());
    return out;
}

CertificationReport verify_squeeze(double m_star, double M_star, const ModelParams& p, double tol,
                                   const QuadratureConfig& quad) {
    p.require_bounding_tau();
    CertificationReport report;
    const std::string where = "tail";
    report.add_upper("M_le_A_minus_m", where, M_star, bounds::eval_A_minus(m_star, p, quad), tol);
    report.add_lower("m_ge_D_M", where, m_star, bounds::eval_D(M_star, p, quad), tol);
    const ModelParams critical = p.with_tau(kCriticalTau);
    report.add_upper("M_lt_A_minus_m_critical", where, M_star, bounds::eval_A_minus(m_star, critical, quad), tol);
    report.add_lower("m_gt_R_M", where, m_star, bounds::eval_R(M_star, critical), tol);
    report.m_star = m_star;
    report.M_star = M_star;
    return report;
}

std::vector<double> iterate_F(double x0, const ModelParams& p, std::size_t n, const QuadratureConfig& quad) {
    p.require_critical_tau();
    if (!(x0 >= 0.0) || !std::isfinite(x0)) {
        throw PreconditionError("F iteration needs a finite x0 >= 0");
    }
    std::vector<double> seq{x0};
    seq.reserve(n + 1);
    while (seq.size() <= n && seq.back() >= 1e-12) seq.push_back(bounds::eval_F(seq.back(), p, quad));
    return seq;
}

CertificationReport count_inflections(const OscillationRecord& rec) {
    CertificationReport report;
    for (std::size_t k = 0; k + 1 < rec.T.size(); ++k) {
        const double a = rec.T[k];
        const double b = rec.T[k + 1];
        const auto n = std::count_if(rec.inflections.begin(), rec.inflections.end(),
                                     [&](double t) { return t > a && t < b; });
        Check c{"unique_inflection", span_label(k, k + 1), static_cast<double>(n), 1.0,
                -std::abs(static_cast<double>(n) - 1.0), n == 1};
        report.add(std::move(c));
    }
    return report;
}

Certification certify_profile(const wave::ProfileSolution& sol, const CertifyConfig& cfg) {
    Certification out;
    const ModelParams& p = sol.params;
    if (p.tau() > kCriticalTau) {
        throw DomainError("certification covers tau <= 3/2, got " + std::to_string(p.tau()));
    }
    out.log = to_log_coordinates(sol);
    out.record = extract_oscillation(out.log, cfg.noise_floor);
    auto& report = out.report;
    if (p.tau() <= 1.0) {
        report.trivially_certified = true;
        report.notes = "trivially certified (tau <= 1)";
        return out;
    }

    const auto& rec = out.record;
    const auto& V = rec.V;
    const double tol = cfg.slack;
    if (rec.empty()) {
        report.add({"oscillation_present", "record", 0.0, 1.0, -1.0, false});
        report.notes = "no oscillation above the noise floor";
        return out;
    }

    report.merge(verify_structure(rec, p));

    out.limits = estimate_limits(rec);
    report.add_upper("tail_m_small", "tail", std::abs(out.limits.m_star), cfg.tail_threshold, 0.0);
    report.add_upper("tail_M_small", "tail", std::abs(out.limits.M_star), cfg.tail_threshold, 0.0);
    if (out.limits.low_confidence) report.notes = "tail limits from fewer than four extrema";

    report.merge(verify_slope_bounds(out.log, rec, tol));
    report.merge(verify_amplitude_bounds(rec, p, tol, cfg.quad));
    report.merge(count_inflections(rec));
    report.merge(verify_squeeze(out.limits.m_star, out.limits.M_star, p, tol, cfg.quad));

    // F^n from the largest positive amplitude.
    const double x0 = *std::max_element(V.begin(), V.end());
    if (x0 > 0.0) {
        const auto seq = iterate_F(x0, p.with_tau(kCriticalTau), cfg.f_iterations, cfg.quad);
        double worst = seq.size() < 2 ? 0.0 : std::numeric_limits<double>::infinity();
        for (std::size_t k = 1; k < seq.size(); ++k) worst = std::min(worst, seq[k - 1] - seq[k]);
        report.add({"F_iteration_decreasing", "from max V", seq.back(), seq.front(), worst, worst > 0.0});
    }
    report.m_star = out.limits.m_star;
    report.M_star = out.limits.M_star;
    return out;
}

}  // namespace kpp::osc
