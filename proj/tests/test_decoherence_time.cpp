#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "dephaser/decoherence_time.hpp"

using namespace dephaser;
using Outcome = DecoherenceVerdict::Outcome;
constexpr double pi = std::numbers::pi;

TEST(DecoherenceTime, OhmicHighTemperatureMatchesFormula) {
    const auto v = solve_decoherence_time({1, 0.3, 100, 1000}, GammaMethod::closed(Regime::HighT), 100);
    ASSERT_EQ(v.outcome, Outcome::TimeFound);
    EXPECT_NEAR(v.t_d, 1 / (pi * 300), 1e-6 / (pi * 300));
    ASSERT_TRUE(v.formula_estimate);
    EXPECT_NEAR(*v.formula_estimate, 1.0610e-3, 1e-7);
}

TEST(DecoherenceTime, OhmicZeroTemperatureRoot) {
    const auto v = solve_decoherence_time({1, 0.3, 100, 0}, GammaMethod::quadrature(), 100);
    ASSERT_EQ(v.outcome, Outcome::TimeFound);
    const double exact = std::sqrt(std::expm1(1 / 0.15)) / 100;
    EXPECT_NEAR(v.t_d, exact, 1e-7);
    EXPECT_NEAR(v.t_d, std::exp(1 / 0.3) / 100, 0.02 * std::exp(1 / 0.3) / 100);
    EXPECT_NEAR(gamma_quadrature({1, 0.3, 100, 0}, v.t_d), 1.0, 1e-6);
}

TEST(DecoherenceTime, SupraohmicSaturation) {
    const auto zero = solve_decoherence_time({3, 0.3, 100, 0}, GammaMethod::quadrature(), 100);
    ASSERT_EQ(zero.outcome, Outcome::Saturates);
    EXPECT_NEAR(zero.gamma_sup, 0.3, 1e-3);
    const auto hot = solve_decoherence_time({3, 0.03, 100, 1000}, GammaMethod::quadrature(), 100);
    ASSERT_EQ(hot.outcome, Outcome::Saturates);
    EXPECT_NEAR(hot.gamma_sup, 0.6, 6e-3);
    EXPECT_LT(hot.gamma_sup, 1.0);
}

TEST(DecoherenceTime, SupraohmicHighTemperatureAbovePlateau) {
    const BathSpec b{3, 0.3, 100, 1000};
    const auto v = solve_decoherence_time(b, GammaMethod::closed(Regime::HighT), 100);
    ASSERT_EQ(v.outcome, Outcome::TimeFound);
    ASSERT_TRUE(v.formula_estimate);
    // the interpolating closed form is 6 u / (1 + u); the formula keeps only the small-t piece
    EXPECT_NEAR(v.t_d, std::sqrt(1.0 / 5.0) / 100, 1e-9);
    EXPECT_NEAR(*v.formula_estimate, std::sqrt(1.0 / 6.0) / 100, 1e-12);
}

TEST(DecoherenceTime, PlateauAtThresholdIsIndeterminate) {
    const auto v = solve_decoherence_time({3, 0.05, 100, 1000}, GammaMethod::closed(Regime::HighT), 100);
    EXPECT_EQ(v.outcome, Outcome::Indeterminate);
    EXPECT_FALSE(v.diagnostics.empty());
}

TEST(DecoherenceTime, ProbeLimitGivesIndeterminate) {
    const auto v = solve_decoherence_time({1, 0.01, 100, 0}, GammaMethod::closed(Regime::ZeroT), 10);
    EXPECT_EQ(v.outcome, Outcome::Indeterminate);
    EXPECT_THROW(solve_decoherence_time({1, 0.3, 100, 0}, GammaMethod::quadrature(), 0.0), UsageError);
}

TEST(DecoherenceTime, MonotoneInCouplingAndTemperature) {
    double prev = INFINITY;
    for (double g : {0.2, 0.3, 0.5}) {
        const auto v = solve_decoherence_time({1, g, 100, 0}, GammaMethod::closed(Regime::ZeroT), 1e4);
        ASSERT_EQ(v.outcome, Outcome::TimeFound);
        EXPECT_LE(v.t_d, prev);
        prev = v.t_d;
    }
    prev = INFINITY;
    for (double T : {500.0, 1000.0, 2000.0}) {
        const auto v = solve_decoherence_time({1, 0.3, 100, T}, GammaMethod::closed(Regime::HighT), 100);
        ASSERT_EQ(v.outcome, Outcome::TimeFound);
        EXPECT_LE(v.t_d, prev);
        prev = v.t_d;
    }
}

TEST(Observability, Examples) {
    const QubitSpec q{1.0, pi / 2};
    const auto cold = observability_condition({1, 0.3, 100, 0}, q, GammaMethod::closed(Regime::ZeroT), 1e4);
    ASSERT_TRUE(cold.coarse);
    EXPECT_TRUE(*cold.coarse);
    const auto hot = observability_condition({1, 0.3, 100, 1000}, q, GammaMethod::closed(Regime::HighT), 100);
    ASSERT_TRUE(hot.coarse);
    EXPECT_FALSE(*hot.coarse);
    EXPECT_FALSE(hot.observable);
    EXPECT_LT(hot.margin, 1.0);
    const auto free = observability_condition({3, 0.0, 100, 0}, q, GammaMethod::closed(Regime::ZeroT), 100);
    EXPECT_TRUE(free.observable);
    EXPECT_TRUE(std::isinf(free.margin));
}
