#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "kicktop/rmt.hpp"
#include "oracles.hpp"

using namespace kicktop;

TEST(Predictions, ClosedForms) {
    const auto p = predictions(161);
    EXPECT_NEAR(p.sv_saturation, std::log(161.0) - 0.5, 1e-15);
    EXPECT_NEAR(p.sv_saturation, 4.5814, 1e-4);
    EXPECT_DOUBLE_EQ(p.delta_n_eff_pure, 162.0 / 322.0);
    EXPECT_NEAR(p.delta_n_eff_coupled, 0.993828, 1e-6);
    EXPECT_NEAR(p.delta_n_eff_coupled, 162.0 / 163.0, 1e-4);
    EXPECT_NEAR(p.sr_saturation, 1.0 - 323.0 / (161.0 * 161.0 + 2.0), 1e-15);
    EXPECT_NEAR(p.m2_pure, 2.0 / 162.0, 1e-15);
    EXPECT_THROW(predictions(1), std::domain_error);
    for (std::size_t n = 3; n < 400; ++n) {
        const auto q = predictions(n);
        EXPECT_LT(q.delta_n_eff_coupled, 1.0);
        EXPECT_GT(q.delta_n_eff_coupled, q.delta_n_eff_pure);
        EXPECT_GT(q.delta_n_eff_pure, 0.5);
        EXPECT_LE(q.delta_n_eff_pure, 1.0);
        if (n >= 10) {
            EXPECT_GT(q.delta_n_eff_coupled, 0.9);
        }
    }
}

TEST(SpecialFunctions, KnownValues) {
    EXPECT_EQ(si(0.0), 0.0);
    EXPECT_NEAR(si(std::numbers::pi), 1.8519370, 1e-7);
    EXPECT_NEAR(ci(1.0), 0.3374039, 1e-7);
    EXPECT_NEAR(kEulerGamma, 0.577216, 1e-6);
    EXPECT_THROW(ci(0.0), std::domain_error);
    EXPECT_THROW(ci(-1.0), std::domain_error);
}

TEST(SpecialFunctions, AgainstQuadrature) {
    for (double x : {1e-6, 0.01, 0.5, 1.0, 2.0, 3.9, 4.0, 4.1, 7.5, 10.0, 31.4, 100.0, 777.7, 3000.0, 10000.0}) {
        EXPECT_NEAR(si(x), oracle::si_quad(x), 1e-10) << x;
        EXPECT_NEAR(ci(x), oracle::ci_quad(x), 1e-10) << x;
        EXPECT_NEAR(cin(x), kEulerGamma + std::log(x) - oracle::ci_quad(x), 1e-10) << x;
        EXPECT_NEAR(si(-x), -si(x), 1e-12);
    }
    EXPECT_NEAR(si(1e5), std::numbers::pi / 2, 1e-4);
}

TEST(PEpsilon, ExactSumProperties) {
    for (int two_j : {1, 2, 7, 20, 160}) {
        const SpinQuantum s(two_j);
        EXPECT_EQ(p_epsilon_exact(s, 0.0), 1.0);
        for (double eps : {1e-4, 1e-2, 0.3, 2.0}) {
            const double p = p_epsilon_exact(s, eps);
            EXPECT_LE(std::abs(p), 1.0);
            EXPECT_EQ(p, p_epsilon_exact(s, -eps));
            const auto brute = oracle::p_brute(two_j, eps);
            EXPECT_NEAR(p, brute.real(), 1e-13);
            EXPECT_NEAR(brute.imag(), 0.0, 1e-13);
        }
    }
}

TEST(PEpsilon, ClosedFormBehaviour) {
    EXPECT_NEAR(p_epsilon_closed(161, 0.0), 1.0 + 2.0 / 161.0, 1e-15);
    EXPECT_NEAR(p_epsilon_closed(161, 1e-9), 1.0 + 2.0 / 161.0, 1e-9);
    // The (2/N)[1 + Si(N eps/2)/eps] form overshoots the exact sum by about 2/N at small eps
    // (0.0129 at j = 80, eps = 1e-2), so it is not within 1% there. The form with j in the Si
    // argument, which sr_analytic uses, is.
    const SpinQuantum s(160);
    for (double eps : {1e-4, 1e-3, 1e-2}) {
        const double bias = p_epsilon_closed(161, eps) - p_epsilon_exact(s, eps);
        EXPECT_GT(bias, 0.0) << eps;
        EXPECT_LT(bias, 2.0 / 161.0 + 1e-3) << eps;
        EXPECT_NEAR(sr_p(s, eps, SrMode::ClosedForm), p_epsilon_exact(s, eps), 0.01 * p_epsilon_exact(s, eps)) << eps;
    }
    const double eps = 5.0;
    EXPECT_NEAR(p_epsilon_closed(161, eps), (2.0 / 161.0) * (1.0 + std::numbers::pi / (2.0 * eps)), 2e-4);
}

TEST(SrAnalytic, BracketMatchesQuadrupleSum) {
    for (int two_j : {1, 2, 4, 9}) {
        for (double eps : {1e-3, 0.1, 1.0}) {
            const auto brute = oracle::bracket_brute(two_j, eps);
            EXPECT_NEAR(sr_bracket(SpinQuantum(two_j), eps, SrMode::ExactSum), brute.real(), 1e-13);
            EXPECT_NEAR(brute.imag(), 0.0, 1e-13);
        }
    }
}

TEST(SrAnalytic, BasicProperties) {
    const SpinQuantum s(160);
    for (auto mode : {SrMode::ExactSum, SrMode::ClosedForm}) {
        for (std::size_t n : {1u, 2u, 50u, 1000u}) EXPECT_EQ(sr_analytic(n, s, 0.0, mode), 0.0);
        EXPECT_NEAR(sr_analytic(1, s, 1e-2, mode), 1.0 - sr_bracket(s, 1e-2, mode), 1e-15);
        EXPECT_THROW(sr_analytic(0, s, 1e-2, mode), std::invalid_argument);
    }
    double prev = -1.0;
    for (std::size_t n = 1; n <= 20000; n += 7) {
        const double v = sr_analytic(n, s, 1e-3, SrMode::ExactSum);
        EXPECT_GE(v, prev);
        prev = v;
    }
    EXPECT_NEAR(sr_analytic(2000000, s, 1e-3, SrMode::ExactSum), 1.0, 1e-6);
    // The long-time limit of the formula sits above the RMT saturation.
    EXPECT_GT(sr_analytic(2000000, s, 1e-3, SrMode::ExactSum), predictions(161).sr_saturation);
}

TEST(SrAnalytic, ClosedFormTracksExactSum) {
    const SpinQuantum s(160);
    for (double eps : {1e-3, 1e-2}) {
        double worst = 0.0;
        for (std::size_t n = 1; n <= 1000; ++n) {
            worst = std::max(worst, std::abs(sr_analytic(n, s, eps, SrMode::ClosedForm) -
                                             sr_analytic(n, s, eps, SrMode::ExactSum)));
        }
        EXPECT_LT(worst, 0.02) << eps;
    }
}

TEST(SrAnalytic, WeakCouplingSlope) {
    const SpinQuantum s(160);
    const double rate = sr_weak_rate(s, 1e-4);
    EXPECT_NEAR(rate, 1.422e-5, 1e-8);
    EXPECT_EQ(sr_weak_rate(s, 0.0), 0.0);
    EXPECT_NEAR(sr_weak_rate(s, 2e-4), 4.0 * rate, 1e-20);
    for (auto mode : {SrMode::ExactSum, SrMode::ClosedForm}) {
        const double slope = (sr_analytic(101, s, 1e-4, mode) - sr_analytic(1, s, 1e-4, mode)) / 100.0;
        EXPECT_NEAR(slope, rate, 0.2 * rate);
    }
}
