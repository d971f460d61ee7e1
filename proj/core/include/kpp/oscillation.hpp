#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "kpp/grid.hpp"
#include "kpp/params.hpp"
#include "kpp/quadrature.hpp"
#include "kpp/wave_profiles.hpp"

/// Log-coordinate analysis of oscillating profiles: x = -ln phi, its slope
/// y = x', and the delayed forcing g(t) = w(x(t - h)) of the Riccati
/// equation y' = y^2 + c y - g.
namespace kpp::osc {

struct LogProfile {
    Grid1D grid;
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> g;
    ModelParams params{2.0, 0.0};
    std::size_t delay_steps = 0;
    double left_amplitude = 1e-6;
    double decay_rate = 1.0;

    /// x(t_i - h), reading the left asymptotic extension below the grid.
    double delayed_x(std::size_t i) const;
};

/// Throws PreconditionError if phi is not strictly positive.
LogProfile to_log_coordinates(const wave::ProfileSolution& sol);

/// Zeros Q_j of x, one extremum T_j inside each [Q_j, Q_{j+1}], amplitudes
/// V_j = x(T_j), the critical point of y between consecutive extrema, and
/// the inflection points of phi.
struct OscillationRecord {
    std::vector<double> Q;
    std::vector<double> T;
    std::vector<double> V;
    std::vector<std::size_t> T_index;
    /// Number of discrete local extrema of x found in each (Q_j, Q_{j+1}).
    std::vector<int> extrema_per_interval;
    /// critical[j] is the extremum of y on [T_j, T_{j+1}] (a minimum when
    /// V_j > 0, a maximum otherwise).
    std::vector<double> critical;
    std::vector<std::size_t> critical_index;
    /// Number of discrete local extrema of y on [T_j, T_{j+1}].
    std::vector<int> critical_per_interval;
    std::vector<double> inflections;

    bool empty() const noexcept { return V.empty(); }
};

inline constexpr double kDefaultNoiseFloor = 1e-9;

/// Oscillations whose amplitude falls below noise_floor end the record.
OscillationRecord extract_oscillation(const LogProfile& lp, double noise_floor = kDefaultNoiseFloor);

/// One inequality outcome. margin > 0 means the inequality holds; a check
/// passes when margin > -slack.
struct Check {
    std::string name;
    std::string interval;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
    bool pass = true;
};

struct CertificationReport {
    std::vector<Check> checks;
    double m_star = 0.0;
    double M_star = 0.0;
    bool overall = true;
    bool trivially_certified = false;
    std::string notes;

    /// lhs <= rhs with slack.
    void add_upper(std::string name, std::string interval, double lhs, double rhs, double slack);
    /// lhs >= rhs with slack.
    void add_lower(std::string name, std::string interval, double lhs, double rhs, double slack);
    void add(Check check);
    void merge(const CertificationReport& other);
    std::size_t failures() const;
};

/// Riccati slope bounds between consecutive extrema, the node-wise identity
/// rho(x(t-h))/h == f(g(t)), and y > lambda_1 on [T_0, T_last].
CertificationReport verify_slope_bounds(const LogProfile& lp, const OscillationRecord& rec,
                                        double tol = 1e-6);

/// V_{2j+1} <= A_-(V_{2j}), V_{2j} >= B(V_{2j-1}), V_{2j} >= A_+(V_{2j-1})
/// when V_{2j-1} <= x2, and V_0 >= -c h. For tau <= 1 the report is
/// marked trivially certified; tau > 3/2 throws DomainError.
CertificationReport verify_amplitude_bounds(const OscillationRecord& rec, const ModelParams& p,
                                            double tol = 1e-6, const QuadratureConfig& quad = {});

/// Sign alternation of V (starting negative), one discrete extremum per
/// (Q_j, Q_{j+1}), T_j - Q_j < h, and |V| strictly decreasing over the last
/// four extrema.
CertificationReport verify_structure(const OscillationRecord& rec, const ModelParams& p);

struct TailLimits {
    double m_star = 0.0;
    double M_star = 0.0;
    bool low_confidence = false;
    std::size_t window = 0;
};

/// min / max of V over its final quarter (at least two values). Fewer than
/// four extrema: the last available pair, flagged low-confidence.
TailLimits estimate_limits(const OscillationRecord& rec);

/// M <= A_-(m), m >= D(M), and the tau = 3/2 chain M < A_-(m, c, 3/2),
/// m > R(M).
CertificationReport verify_squeeze(double m_star, double M_star, const ModelParams& p,
                                   double tol = 1e-6, const QuadratureConfig& quad = {});

/// x_{k+1} = F(x_k) at tau = 3/2, starting with x0; stops early once an
/// iterate falls below 1e-12.
std::vector<double> iterate_F(double x0, const ModelParams& p, std::size_t n,
                              const QuadratureConfig& quad = {});

/// Exactly one inflection of phi between consecutive extrema.
CertificationReport count_inflections(const OscillationRecord& rec);

struct CertifyConfig {
    double noise_floor = kDefaultNoiseFloor;
    double slack = 1e-6;
    /// Bound on |m_*|, |M_*| for tail convergence.
    double tail_threshold = 1e-3;
    std::size_t f_iterations = 50;
    QuadratureConfig quad;
};

struct Certification {
    LogProfile log;
    OscillationRecord record;
    TailLimits limits;
    CertificationReport report;
};

/// Full pipeline on a solved profile: structure of the oscillation
/// (alternation, one extremum per interval, T_j - Q_j < h, decreasing tail,
/// small tail limits), slope bounds, amplitude recursions, inflections,
/// squeeze and an F-iteration certificate.
Certification certify_profile(const wave::ProfileSolution& sol, const CertifyConfig& cfg = {});

}  // namespace kpp::osc
