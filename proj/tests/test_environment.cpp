#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "dephaser/environment.hpp"

using namespace dephaser;

TEST(SpectralDensity, OhmicAndSupraohmicCoincideAtCutoff) {
    const double expected = 0.3 / 4 * 100 * std::exp(-1.0);
    EXPECT_NEAR(spectral_density({1, 0.3, 100, 0}, 100.0), expected, 1e-12);
    EXPECT_NEAR(spectral_density({3, 0.3, 100, 0}, 100.0), expected, 1e-12);
    EXPECT_NEAR(expected, 2.7591, 5e-5);
}

TEST(SpectralDensity, VanishesAtZeroAndRejectsNegative) {
    EXPECT_EQ(spectral_density({1, 0.3, 100, 0}, 0.0), 0.0);
    EXPECT_EQ(spectral_density({3, 0.3, 100, 0}, 0.0), 0.0);
    EXPECT_THROW(spectral_density({1, 0.3, 100, 0}, -1.0), UsageError);
}

TEST(SpectralDensity, ScalesLinearlyInCoupling) {
    for (double w : {0.1, 1.0, 50.0, 400.0})
        EXPECT_NEAR(spectral_density({3, 0.6, 100, 0}, w), 2 * spectral_density({3, 0.3, 100, 0}, w),
                    1e-14 * spectral_density({3, 0.6, 100, 0}, w) + 1e-300);
}

TEST(CothKernel, ReferenceValues) {
    EXPECT_NEAR(coth_kernel(1.0), 1.3130352854993312, 1e-15);
    EXPECT_EQ(coth_kernel(25.0), 1.0);
    EXPECT_THROW(coth_kernel(0.0), UsageError);
    EXPECT_THROW(coth_kernel(-1.0), UsageError);
}

TEST(CothKernel, SeriesBranchMatchesDirectFormula) {
    for (double x : {1e-3, 5e-3, 9.9e-3, 1.01e-2}) {
        const double direct = std::cosh(x) / std::sinh(x);
        EXPECT_NEAR(coth_kernel(x), direct, 1e-13 * direct) << x;
        EXPECT_NEAR(x_coth_x(x), x * direct, 1e-14) << x;
    }
    EXPECT_EQ(x_coth_x(0.0), 1.0);
}

TEST(Regime, Classification) {
    EXPECT_EQ(classify_regime({1, 0.3, 100, 0}).tag, Regime::ZeroT);
    EXPECT_EQ(classify_regime({1, 0.3, 100, 1000}).tag, Regime::HighT);
    EXPECT_EQ(classify_regime({1, 0.3, 100, 1.55}).tag, Regime::GeneralT);
    EXPECT_DOUBLE_EQ(classify_regime({1, 0.3, 100, 1000}).validity_ratio, 20.0);
    EXPECT_EQ(classify_regime({1, 0.3, 100, 1000}, 25.0).tag, Regime::GeneralT);
}

TEST(Specs, Validation) {
    EXPECT_THROW((BathSpec{2, 0.3, 100, 0}).validate(), UsageError);
    EXPECT_THROW((BathSpec{1, -0.1, 100, 0}).validate(), UsageError);
    EXPECT_THROW((BathSpec{1, 0.3, 0, 0}).validate(), UsageError);
    EXPECT_THROW((BathSpec{1, 0.3, 100, -1}).validate(), UsageError);
    EXPECT_NO_THROW((BathSpec{1, 0.0, 100, 0}).validate());
    EXPECT_THROW((QubitSpec{0.0, 1.0}).validate(), UsageError);
    EXPECT_THROW((QubitSpec{1.0, 4.0}).validate(), UsageError);
    EXPECT_DOUBLE_EQ((QubitSpec{2.0, 1.0}).period(), std::numbers::pi);
}
