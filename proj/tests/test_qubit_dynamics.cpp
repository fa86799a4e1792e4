#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "dephaser/qubit_dynamics.hpp"

using namespace dephaser;
constexpr double pi = std::numbers::pi;

namespace {

Eigen::Matrix2cd explicit_matrix(const ReducedDensityMatrix& rho) {
    Eigen::Matrix2cd m;
    m << rho.pop_e, rho.coherence, std::conj(rho.coherence), rho.pop_g;
    return m;
}

} // namespace

TEST(Evolve, PointerStateIsStationary) {
    const auto rho = evolve_with_gamma({1.0, 0.0}, 3.7, 2.0);
    EXPECT_EQ(rho.pop_e, 1.0);
    EXPECT_EQ(rho.pop_g, 0.0);
    EXPECT_EQ(std::abs(rho.coherence), 0.0);
}

TEST(Evolve, UnitaryRevivalAndDephasedModulus) {
    const auto rho = evolve_with_gamma({1.0, pi / 2}, 2 * pi, 0.0);
    EXPECT_NEAR(rho.coherence.real(), 0.5, 1e-15);
    EXPECT_NEAR(rho.coherence.imag(), 0.0, 1e-15);
    const auto d = evolve({1.0, pi / 2}, {1, 0.3, 100, 0}, GammaMethod::closed(Regime::ZeroT), 1.0);
    EXPECT_NEAR(std::abs(d.coherence), 0.5 * std::exp(-0.15 * std::log(10001.0)), 1e-15);
    EXPECT_NEAR(std::abs(d.coherence), 0.12559, 1e-5);
    // rho_01 carries e^{+i Omega t}
    const auto q = evolve_with_gamma({1.0, pi / 2}, 0.5, 0.0);
    EXPECT_NEAR(std::arg(q.coherence), 0.5, 1e-15);
}

TEST(BlochVector, Examples) {
    const auto a = bloch_vector(evolve_with_gamma({1.0, pi / 2}, 0.0, 0.0));
    EXPECT_NEAR(a.x, 1.0, 1e-15);
    EXPECT_NEAR(a.y, 0.0, 1e-15);
    EXPECT_NEAR(a.z, 0.0, 1e-15);
    const auto b = bloch_vector(evolve_with_gamma({1.0, pi / 3}, 0.0, 0.0));
    EXPECT_NEAR(b.x, 0.86603, 1e-5);
    EXPECT_NEAR(b.z, 0.5, 1e-15);
    EXPECT_NEAR(bloch_vector(evolve_with_gamma({1.0, pi / 2}, 1.0, 800.0)).norm(), 0.0, 1e-15);
}

TEST(Eigensystem, Limits) {
    const auto pure = eigensystem(evolve_with_gamma({1.0, 1.0}, 0.3, 0.0), {1.0, 1.0}, 0.0);
    EXPECT_NEAR(pure.eps_plus, 1.0, 1e-15);
    EXPECT_NEAR(pure.eps_minus, 0.0, 1e-15);
    const auto mixed = eigensystem(evolve_with_gamma({1.0, pi / 3}, 0.3, 50.0), {1.0, pi / 3}, 50.0);
    EXPECT_NEAR(mixed.eps_plus, 0.75, 1e-12);
    EXPECT_NEAR(mixed.eps_minus, 0.25, 1e-12);
}

TEST(Eigensystem, UnitaryAngleMatchesInitialWeights) {
    for (double th : {0.2, pi / 3, pi / 2, 2.5}) {
        const auto es = eigensystem(evolve_with_gamma({1.0, th}, 0.0, 0.0), {1.0, th}, 0.0);
        EXPECT_NEAR(std::sin(es.theta_t / 2) * std::sin(es.theta_t / 2),
                    std::cos(th / 2) * std::cos(th / 2), 1e-14);
    }
}

// The dominant eigenvector of the explicit matrix fixes theta_t; at theta0 = pi/2 the
// |e> weight stays 1/2 for every Gamma.
TEST(Eigensystem, EquatorialWeightAgainstEigenOracle) {
    const QubitSpec q{1.0, pi / 2};
    const double gamma = std::log(2.0);
    const auto rho = evolve_with_gamma(q, 0.4, gamma);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver(explicit_matrix(rho));
    const auto v = solver.eigenvectors().col(1);
    const auto es = eigensystem(rho, q, gamma);
    const double w = std::sin(es.theta_t / 2) * std::sin(es.theta_t / 2);
    EXPECT_NEAR(w, std::norm(v(0)), 1e-12);
    EXPECT_NEAR(w, 0.5, 1e-12);
}

TEST(Eigensystem, RandomizedAgainstEigenOracle) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> angle(0.0, pi), gam(0.0, 8.0), time(0.0, 10.0);
    for (int i = 0; i < 2000; ++i) {
        const QubitSpec q{1.0, angle(rng)};
        const double g = gam(rng), t = time(rng);
        const auto rho = evolve_with_gamma(q, t, g);
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver(explicit_matrix(rho));
        const auto es = eigensystem(rho, q, g);
        ASSERT_NEAR(es.eps_minus, solver.eigenvalues()(0), 1e-12);
        ASSERT_NEAR(es.eps_plus, solver.eigenvalues()(1), 1e-12);
        if (es.eps_plus - es.eps_minus > 1e-6) {
            const auto v = solver.eigenvectors().col(1);
            const double w = std::sin(es.theta_t / 2) * std::sin(es.theta_t / 2);
            ASSERT_NEAR(w, std::norm(v(0)), 1e-9);
            ASSERT_NEAR(w, dominant_excited_weight(q.theta0, g), 1e-12);
            // phase of the |e> amplitude relative to |g> follows the coherence
            if (std::abs(v(0)) > 1e-6 && std::abs(v(1)) > 1e-6) {
                const double rel = std::arg(v(0) / v(1));
                ASSERT_NEAR(std::remainder(rel - std::arg(es.phase_factor), 2 * pi), 0.0, 1e-8);
            }
        }
        const auto gen = hermitian_eigen_2x2(rho.pop_e, rho.pop_g, rho.coherence);
        ASSERT_NEAR(gen.lambda_max, solver.eigenvalues()(1), 1e-12);
    }
}

TEST(DensityMatrix, RandomizedInvariants) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> angle(0.0, pi), gam(0.0, 10.0), time(0.0, 20.0);
    for (int i = 0; i < 2000; ++i) {
        const QubitSpec q{1.0, angle(rng)};
        double g1 = gam(rng), g2 = gam(rng);
        if (g1 > g2) std::swap(g1, g2);
        const double t = time(rng);
        const auto a = evolve_with_gamma(q, t, g1);
        const auto b = evolve_with_gamma(q, t, g2);
        ASSERT_EQ(a.trace(), 1.0);
        ASSERT_LE(b.purity(), a.purity() + 1e-15);
        ASSERT_LE(bloch_vector(a).norm(), 1.0 + 1e-15);
        ASSERT_GE(a.pop_e, 0.0);
        ASSERT_GE(a.pop_g, 0.0);
    }
}

TEST(MasterEquation, StationaryAndUnitaryCases) {
    const BathSpec b{1, 0.3, 100, 1000};
    EXPECT_LT(master_equation_residual({1.0, 0.0}, b, GammaMethod::closed(Regime::HighT), 0.5, 1e-3),
              1e-12);
    const BathSpec free{1, 0.0, 100, 0};
    const double r1 = master_equation_residual({1.0, pi / 2}, free, GammaMethod::quadrature(), 0.5, 1e-2);
    const double r2 = master_equation_residual({1.0, pi / 2}, free, GammaMethod::quadrature(), 0.5, 5e-3);
    EXPECT_LT(r1, 1e-4);
    EXPECT_NEAR(r1 / r2, 4.0, 0.1);
}

TEST(MasterEquation, SecondOrderConvergence) {
    quad::Tolerances tight;
    tight.abs_tol = 1e-15;
    tight.rel_tol = 1e-13;
    const BathSpec b{1, 0.3, 100, 1000};
    const auto m = GammaMethod::quadrature(tight);
    const double r1 = master_equation_residual({1.0, pi / 2}, b, m, 5e-4, 2e-5);
    const double r2 = master_equation_residual({1.0, pi / 2}, b, m, 5e-4, 1e-5);
    EXPECT_NEAR(r1 / r2, 4.0, 0.4);
}

TEST(MasterEquation, RejectsBadSteps) {
    const BathSpec b{1, 0.3, 100, 0};
    EXPECT_THROW(master_equation_residual({1.0, 1.0}, b, GammaMethod::quadrature(), 0.5, 0.0),
                 UsageError);
    EXPECT_THROW(master_equation_residual({1.0, 1.0}, b, GammaMethod::quadrature(), 0.5, 0.6),
                 UsageError);
}
