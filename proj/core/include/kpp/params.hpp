#pragma once

namespace kpp {

/// Wave speed and delay of the delayed KPP-Fisher equation.
///
/// The profile equation is written in the travelling coordinate, where the
/// delay becomes h = c * tau; eps = 1 / c^2 is the small parameter of the
/// rescaled form. Construction rejects c < 2 and tau < 0.
class ModelParams {
public:
    ModelParams(double c, double tau);

    double c() const noexcept { return c_; }
    double tau() const noexcept { return tau_; }
    double h() const noexcept { return h_; }
    double eps() const noexcept { return eps_; }

    /// Throws DomainError unless tau lies in (1, 3/2], the interval on which
    /// the bounding functions are defined.
    void require_bounding_tau() const;
    bool has_bounding_tau() const noexcept;

    /// Throws DomainError unless tau == 3/2.
    void require_critical_tau() const;

    /// Same speed, different delay.
    ModelParams with_tau(double tau) const { return {c_, tau}; }

private:
    double c_;
    double tau_;
    double h_;
    double eps_;
};

inline constexpr double kCriticalTau = 1.5;

}  // namespace kpp
