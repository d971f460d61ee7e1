#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "kpp/errors.hpp"
#include "kpp/spectral.hpp"

using namespace kpp;
using namespace kpp::spectral;

TEST(CharacteristicFunction, KnownValues) {
    const ModelParams p(2.0, 1.5);
    EXPECT_EQ(char_eval({0.0, 0.0}, p), Complex(-1.0, 0.0));
    EXPECT_NEAR(std::abs(char_eval({1.0 + std::sqrt(2.0), 0.0}, ModelParams(2.0, 0.0))), 0.0, 1e-14);
    const Complex z(0.4, 1.3);
    EXPECT_NEAR(std::abs(char_eval(std::conj(z), p) - std::conj(char_eval(z, p))), 0.0, 1e-15);
}

TEST(CharacteristicFunction, DerivativeMatchesDifference) {
    const ModelParams p(3.0, 1.25);
    const double d = 1e-5;
    for (Complex z : {Complex(0.3, 0.2), Complex(1.5, -2.0), Complex(-0.5, 4.0)}) {
        const Complex fd = (char_eval(z + d, p) - char_eval(z - d, p)) / (2 * d);
        EXPECT_NEAR(std::abs(fd - char_deriv(z, p)), 0.0, 1e-8 * (1.0 + std::abs(fd)));
    }
}

TEST(RootCount, NoDelaySingleRoot) {
    const auto r = count_rhp_roots(ModelParams(2.0, 0.0));
    EXPECT_EQ(r.count, 1);
    ASSERT_EQ(r.roots.size(), 1u);
    EXPECT_NEAR(r.roots[0].real(), 1.0 + std::sqrt(2.0), 1e-10);
}

TEST(RootCount, BelowAndAboveCrossing) {
    EXPECT_EQ(count_rhp_roots(ModelParams(2.0, 1.5)).count, 1);
    EXPECT_GE(count_rhp_roots(ModelParams(2.0, 3.0)).count, 3);
}

TEST(RootCount, LocatedRootsAreRootsInConjugatePairs) {
    for (double c : {2.0, 5.0}) {
        const ModelParams p(c, 3.0);
        const auto r = count_rhp_roots(p);
        ASSERT_EQ(static_cast<int>(r.roots.size()), r.count);
        EXPECT_NEAR(r.winding_integral, std::round(r.winding_integral), 0.25);
        int real_roots = 0;
        for (const auto& z : r.roots) {
            EXPECT_LT(std::abs(char_eval(z, p)), 1e-10);
            EXPECT_GE(z.real(), 0.0);
            EXPECT_LE(std::abs(z), rhp_root_bound(p));
            EXPECT_LT(rhp_root_bound(p), c + 1.0);
            if (std::abs(z.imag()) < 1e-9) {
                ++real_roots;
                continue;
            }
            bool paired = false;
            for (const auto& w : r.roots) paired = paired || std::abs(w - std::conj(z)) < 1e-8;
            EXPECT_TRUE(paired);
        }
        EXPECT_EQ(real_roots, 1);
    }
}

TEST(RootCount, WindingOfKnownPolynomialBox) {
    const ModelParams p(2.0, 0.0);
    const auto w = winding_number(p, {-1.0, 1.0, -1.0, 1.0});
    EXPECT_NEAR(w.winding, 1.0, 1e-6);  // root 1 - sqrt(2)
    EXPECT_GT(w.min_modulus, 0.0);
}

TEST(RootCount, PolishConverges) {
    const ModelParams p(2.0, 0.0);
    EXPECT_NEAR(polish_root({2.5, 0.1}, p).real(), 1.0 + std::sqrt(2.0), 1e-12);
}

TEST(HopfBoundary, ClosedFormIdentities) {
    for (double c : {2.0, 2.5, 3.0, 5.0, 10.0, 100.0}) {
        const auto cp = hopf_boundary(c);
        const double w = cp.omega;
        const double h = c * cp.tau_star;
        EXPECT_NEAR(std::pow(w, 4) + c * c * w * w, 1.0, 1e-12);
        EXPECT_NEAR(std::cos(w * h), -w * w, 1e-12);
        EXPECT_NEAR(std::sin(w * h), c * w, 1e-12);
        EXPECT_LT(std::abs(char_eval({0.0, w}, ModelParams(c, cp.tau_star))), 1e-12);
        EXPECT_GT(cp.tau_star, 1.5);
    }
    EXPECT_THROW(hopf_boundary(1.5), DomainError);
}

TEST(HopfBoundary, DecreasesTowardHalfPi) {
    double prev = hopf_boundary(2.0).tau_star;
    for (double c = 2.5; c <= 1000.0; c *= 1.5) {
        const double t = hopf_boundary(c).tau_star;
        EXPECT_LT(t, prev);
        prev = t;
    }
    EXPECT_NEAR(prev, std::numbers::pi / 2, 1e-4);
}

TEST(HopfBoundary, BisectionBrackets) {
    const auto b = bisect_crossing(2.5, 1.5, 2.0, 1e-3);
    EXPECT_LE(b.tau_hi - b.tau_lo, 1e-3);
    EXPECT_EQ(b.count_lo, 1);
    EXPECT_EQ(b.count_hi, 3);
    EXPECT_LE(b.tau_lo, hopf_boundary(2.5).tau_star + 1e-6);
    EXPECT_GE(b.tau_hi, hopf_boundary(2.5).tau_star - 1e-6);
    EXPECT_THROW(bisect_crossing(2.5, 1.0, 1.5), PreconditionError);
}

TEST(DecayRates, KnownRoots) {
    const auto crit = decay_rates(ModelParams(2.0, 0.0));
    EXPECT_TRUE(crit.double_root);
    EXPECT_EQ(crit.slow, 1.0);
    const auto r = decay_rates(ModelParams(2.5, 0.0));
    EXPECT_FALSE(r.double_root);
    EXPECT_NEAR(r.slow, 0.5, 1e-15);
    EXPECT_NEAR(r.fast, 2.0, 1e-15);
}
