// qubit_dynamics.hpp: pure-dephasing evolution of the reduced density matrix
//
// Basis ordering is (|e>, |g>). Populations stay frozen; the coherence is
//   rho_01(t) = (1/2) sin(theta0) exp(i Omega t - Gamma(t)).

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>

#include "dephaser/decoherence_factor.hpp"
#include "dephaser/environment.hpp"
#include "dephaser/errors.hpp"

namespace dephaser {

using cplx = std::complex<double>;

struct ReducedDensityMatrix {
    double pop_e{1.0};
    double pop_g{0.0};
    cplx coherence{0.0, 0.0}; // rho_01; rho_10 is its conjugate

    double trace() const { return pop_e + pop_g; }
    double purity() const { return pop_e * pop_e + pop_g * pop_g + 2.0 * std::norm(coherence); }
};

// Density matrix at time t for a given Gamma(t).
inline ReducedDensityMatrix evolve_with_gamma(const QubitSpec& qubit, double t, double gamma) {
    qubit.validate();
    if (!(t >= 0.0)) throw UsageError("evolve: t must be >= 0");
    if (!(gamma >= 0.0)) throw UsageError("evolve: gamma must be >= 0");
    const double h = 0.5 * qubit.theta0;
    ReducedDensityMatrix rho;
    rho.pop_e = std::cos(h) * std::cos(h);
    rho.pop_g = 1.0 - rho.pop_e;
    const double modulus = 0.5 * std::sin(qubit.theta0) * std::exp(-gamma);
    rho.coherence = std::polar(modulus, qubit.omega * t);
    return rho;
}

inline ReducedDensityMatrix evolve(const QubitSpec& qubit, const BathSpec& bath,
                                   const GammaMethod& method, double t) {
    return evolve_with_gamma(qubit, t, gamma_value(bath, method, t));
}

struct BlochVector {
    double x{0.0}, y{0.0}, z{0.0};
    double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

inline BlochVector bloch_vector(const ReducedDensityMatrix& rho) {
    return {2.0 * rho.coherence.real(), 2.0 * rho.coherence.imag(), rho.pop_e - rho.pop_g};
}

// Generic eigen-decomposition of a 2x2 Hermitian matrix [[a, c], [conj(c), b]].
// Knows nothing about the dephasing structure; used as the independent route.
struct HermitianEigen2 {
    double lambda_max{0.0}, lambda_min{0.0};
    std::array<cplx, 2> v_max{}; // normalized eigenvector of lambda_max
};

inline HermitianEigen2 hermitian_eigen_2x2(double a, double b, cplx c) {
    const double mean = 0.5 * (a + b);
    const double half_diff = 0.5 * (a - b);
    const double r = std::hypot(half_diff, std::abs(c));
    HermitianEigen2 out;
    out.lambda_max = mean + r;
    out.lambda_min = mean - r;
    if (r == 0.0) {
        out.v_max = {cplx{1.0, 0.0}, cplx{0.0, 0.0}};
        return out;
    }
    // Two algebraically equivalent forms; pick the one without cancellation.
    std::array<cplx, 2> v;
    if (half_diff >= 0.0)
        v = {cplx{half_diff + r, 0.0}, std::conj(c)};
    else
        v = {c, cplx{r - half_diff, 0.0}};
    const double n = std::sqrt(std::norm(v[0]) + std::norm(v[1]));
    out.v_max = {v[0] / n, v[1] / n};
    return out;
}

struct EigenSystem {
    double eps_plus{1.0};
    double eps_minus{0.0};
    double theta_t{0.0};        // |Psi_+> = phase * sin(theta_t/2)|e> + cos(theta_t/2)|g>
    cplx phase_factor{1.0, 0.0}; // winding carried by the |e> amplitude
};

namespace detail {

// sqrt(cos^2 theta0 + e^{-2 Gamma} sin^2 theta0)
inline double bloch_length(double theta0, double gamma) {
    const double c = std::cos(theta0);
    const double s = std::sin(theta0) * std::exp(-gamma);
    return std::hypot(c, s);
}

} // namespace detail

// sin^2(theta_t/2), the |e> weight of the dominant eigenvector.
inline double dominant_excited_weight(double theta0, double gamma) {
    const double R = detail::bloch_length(theta0, gamma);
    if (R == 0.0) return 0.5;
    return 0.5 + 0.5 * std::cos(theta0) / R;
}

inline EigenSystem eigensystem(const ReducedDensityMatrix& rho, const QubitSpec& qubit,
                               double gamma) {
    qubit.validate();
    if (!(gamma >= 0.0)) throw UsageError("eigensystem: gamma must be >= 0");
    const double th = qubit.theta0;
    const double c = std::cos(th);
    const double s = std::sin(th) * std::exp(-gamma);
    const double R = std::hypot(c, s);

    EigenSystem es;
    es.eps_plus = 0.5 + 0.5 * R;
    es.eps_minus = 0.5 - 0.5 * R;
    // tan(theta_t/2) = (R + c) / (e^{-Gamma} sin theta0) = e^{-Gamma} sin theta0 / (R - c)
    es.theta_t = c >= 0.0 ? 2.0 * std::atan2(R + c, s) : 2.0 * std::atan2(s, R - c);
    const double m = std::abs(rho.coherence);
    es.phase_factor = m > 0.0 ? rho.coherence / m : cplx{1.0, 0.0};
    return es;
}

// Max entrywise mismatch between a central-difference rho_dot and the master
// equation rho_dot = +i(Omega/2)[sigma_z, rho] - D(t)[sigma_z, [sigma_z, rho]].
// Only the off-diagonal entries are nonzero on either side.
inline double master_equation_residual(const QubitSpec& qubit, const BathSpec& bath,
                                       const GammaMethod& method, double t, double dt) {
    if (!(dt > 0.0)) throw UsageError("master_equation_residual: dt must be > 0");
    if (!(t > dt)) throw UsageError("master_equation_residual: need t > dt");
    const auto before = evolve(qubit, bath, method, t - dt);
    const auto here = evolve(qubit, bath, method, t);
    const auto after = evolve(qubit, bath, method, t + dt);
    const cplx drho = (after.coherence - before.coherence) / (2.0 * dt);
    const double D = diffusion_coefficient(bath, t, method.tol);
    // [sigma_z, rho]_01 = 2 rho_01, [sigma_z, [sigma_z, rho]]_01 = 4 rho_01
    const cplx rhs = cplx{0.0, qubit.omega} * here.coherence - 4.0 * D * here.coherence;
    const double pop_drift = std::max(std::abs(after.pop_e - before.pop_e),
                                      std::abs(after.pop_g - before.pop_g)) /
                             (2.0 * dt);
    return std::max(std::abs(drho - rhs), pop_drift);
}

} // namespace dephaser
