#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "kpp/quadrature.hpp"

namespace kpp::bounds {

struct InvariantGrid {
    std::vector<double> c{2.0, 2.5, 3.0, 5.0, 10.0};
    std::vector<double> tau{1.1, 1.25, 1.4, 1.5};
    double x_min = -5.0;
    double x_max = 10.0;
    std::size_t points = 401;
    double tol = 1e-9;
    QuadratureConfig quad;
};

/// One sampled inequality. margin > 0 when it holds.
struct InvariantSample {
    std::string name;
    double c = 0.0;
    double tau = 0.0;
    double x = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
    bool pass = true;
};

struct InvariantTally {
    std::string name;
    std::size_t checked = 0;
    std::size_t violations = 0;
    double worst_margin = 0.0;
    double worst_c = 0.0;
    double worst_tau = 0.0;
    double worst_x = 0.0;
};

struct InvariantSuite {
    std::vector<InvariantSample> samples;
    std::vector<InvariantTally> tallies;

    std::size_t violations() const;
    bool pass() const { return violations() == 0; }
};

/// Samples, on every (c, tau, x) of the grid:
///   rho' < 0, rho'' > 0, S rho < 0, rho > r (x > 0),
///   A_-(x, tau) < A_-(x, 3/2) (x < 0), A_+(x, tau) > A_+(x, 3/2) and
///   B(x, tau) > B(x, 3/2) (x > 0) for tau < 3/2,
///   D(x_{k+1}) < D(x_k), and at tau = 3/2: D > R, 0 < F(x) < x (x > 0).
/// A sample passes when margin > -tol. Samples are ordered by (c, tau) as
/// given, regardless of worker count.
InvariantSuite verify_invariants(const InvariantGrid& grid, std::size_t workers);
InvariantSuite verify_invariants(const InvariantGrid& grid = {});

}  // namespace kpp::bounds
