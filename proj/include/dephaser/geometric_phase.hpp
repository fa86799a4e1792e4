// geometric_phase.hpp: geometric phase of the dephasing qubit over the quasicyclic period
//
// Two exact routes over t in [0, tau], tau = 2 pi / Omega:
//   integral:   Omega * ∫ sin^2(theta_t/2) dt, theta_t from the dominant eigenvector
//   functional: arg{ sqrt(eps(0) eps(tau)) <Psi(0)|Psi(tau)> exp(-∫<Psi|dPsi/dt>) }
//               built from a generic 2x2 eigensolver on the explicit density matrix
// plus first-order corrections in gamma0 (closed per regime, or generic from ∫Gamma).
//
// Orientation: with rho_01 ~ e^{+i Omega t} the functional yields -integral (mod 2 pi),
// which is pi(1 - cos theta0) in the unitary limit. phi_exact follows that orientation;
// the raw integral and its winding are kept alongside.

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "dephaser/decoherence_factor.hpp"
#include "dephaser/environment.hpp"
#include "dephaser/interpolation.hpp"
#include "dephaser/qubit_dynamics.hpp"
#include "dephaser/quadrature.hpp"

namespace dephaser {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

// x reduced into [0, 2 pi)
inline double reduce_angle(double x) {
    double r = std::fmod(x, two_pi);
    if (r < 0.0) r += two_pi;
    if (r >= two_pi) r = 0.0;
    return r;
}

// a - b wrapped into (-pi, pi]
inline double angle_difference(double a, double b) {
    double d = std::remainder(a - b, two_pi);
    if (d <= -std::numbers::pi) d += two_pi;
    return d;
}

// Gamma(t) on [0, t_end], either closed form or a Chebyshev interpolant of the quadrature.
struct GammaEvaluator {
    std::function<double(double)> gamma;
    std::string route;
    double interpolation_error{0.0};
    std::size_t interpolation_pieces{0};

    double operator()(double t) const { return gamma(t); }
};

inline GammaEvaluator make_gamma_evaluator(const BathSpec& bath, const GammaMethod& method,
                                           double t_end, double interp_tol) {
    bath.validate();
    GammaEvaluator ev;
    if (method.kind == GammaMethod::Kind::ClosedForm) {
        const Regime r = closed_form_regime(bath, method);
        ev.route = "closed_" + std::string(to_string(r));
        ev.gamma = [bath, r](double t) { return gamma_closed(bath, r, t); };
        return ev;
    }
    ev.route = "quadrature";
    if (bath.gamma0 == 0.0) {
        ev.gamma = [](double) { return 0.0; };
        return ev;
    }
    ChebyshevInterpolant::Options opt;
    opt.abs_tol = interp_tol;
    auto table = std::make_shared<ChebyshevInterpolant>(ChebyshevInterpolant::build(
        [&](double t) { return gamma_quadrature(bath, t, method.tol); }, 0.0, t_end, opt));
    ev.interpolation_error = table->max_error();
    ev.interpolation_pieces = table->pieces();
    ev.gamma = [table](double t) { return std::max(0.0, (*table)(t)); };
    return ev;
}

struct PhaseTolerances {
    quad::Tolerances time{1e-11, 1e-11, 1'000'000, 200'000};
    // Gamma interpolation budget relative to time.abs_tol (10:1 split).
    double interpolation_fraction{0.1};

    double interpolation_tol() const { return time.abs_tol * interpolation_fraction; }
};

namespace detail {

// Geometric breakpoints toward t = 0, where Gamma changes on the 1/Lambda scale.
inline std::vector<double> time_breaks(double tau) {
    std::vector<double> br{0.0};
    for (int k = 24; k >= 1; --k) br.push_back(std::ldexp(tau, -k));
    br.push_back(tau);
    return br;
}

} // namespace detail

inline double phase_unitary(const QubitSpec& qubit) {
    qubit.validate();
    return std::numbers::pi * (1.0 - std::cos(qubit.theta0));
}

struct PhaseIntegral {
    double raw{0.0};     // Omega ∫ sin^2(theta_t/2) dt
    double reduced{0.0}; // (-raw) mod 2 pi
    long winding{0};     // floor(-raw / 2 pi)
    double error{0.0};
};

inline PhaseIntegral phase_exact_integral(const QubitSpec& qubit, const GammaEvaluator& gamma,
                                          const PhaseTolerances& tol = {}) {
    qubit.validate();
    const double tau = qubit.period();
    auto integrand = [&](double t) {
        return qubit.omega * dominant_excited_weight(qubit.theta0, gamma(t));
    };
    const auto br = detail::time_breaks(tau);
    const auto r = quad::integrate_or_throw(integrand, std::span<const double>(br), tol.time,
                                            "phase_exact_integral");
    PhaseIntegral out;
    out.raw = r.value;
    out.error = r.error;
    out.winding = static_cast<long>(std::floor(-r.value / two_pi));
    out.reduced = reduce_angle(-r.value);
    return out;
}

inline PhaseIntegral phase_exact_integral(const QubitSpec& qubit, const BathSpec& bath,
                                          const GammaMethod& method,
                                          const PhaseTolerances& tol = {}) {
    return phase_exact_integral(
        qubit, make_gamma_evaluator(bath, method, qubit.period(), tol.interpolation_tol()), tol);
}

struct FunctionalPhase {
    double reduced{0.0};
    double modulus{0.0}; // |sqrt(eps eps) <Psi(0)|Psi(tau)>|
    bool defined{true};  // false when the modulus is below 1e-15
    double error{0.0};
};

namespace detail {

struct GaugedState {
    cplx e, g; // g real and >= 0
    double eps;
};

inline GaugedState dominant_state(const QubitSpec& qubit, double t, double gamma) {
    const auto rho = evolve_with_gamma(qubit, t, gamma);
    const auto eig = hermitian_eigen_2x2(rho.pop_e, rho.pop_g, rho.coherence);
    cplx e = eig.v_max[0], g = eig.v_max[1];
    const double ag = std::abs(g);
    if (ag > 0.0) {
        const cplx fix = std::conj(g) / ag;
        e *= fix;
        g *= fix;
    }
    return {e, g, eig.lambda_max};
}

} // namespace detail

inline FunctionalPhase phase_exact_functional(const QubitSpec& qubit, const GammaEvaluator& gamma,
                                              const PhaseTolerances& tol = {}) {
    qubit.validate();
    FunctionalPhase out;
    // Pointer states: the path is a single point, the functional is a positive real.
    if (qubit.theta0 == 0.0 || qubit.theta0 == std::numbers::pi) {
        out.modulus = 1.0;
        return out;
    }
    const double tau = qubit.period();
    const double h = 1e-5 * tau;
    // Im<Psi|dPsi/dt> = |e|^2 d(arg e)/dt in the gauge where the |g> amplitude is real.
    auto connection = [&](double t) {
        const double t_lo = std::max(0.0, t - h);
        const double t_hi = t + h;
        const auto mid = detail::dominant_state(qubit, t, gamma(t));
        const auto lo = detail::dominant_state(qubit, t_lo, gamma(t_lo));
        const auto hi = detail::dominant_state(qubit, t_hi, gamma(std::min(tau, t_hi)));
        const double dphi =
            std::remainder(std::arg(hi.e) - std::arg(lo.e), two_pi) / (t_hi - t_lo);
        return std::norm(mid.e) * dphi;
    };
    const auto br = detail::time_breaks(tau);
    const auto r = quad::integrate_or_throw(connection, std::span<const double>(br), tol.time,
                                            "phase_exact_functional");
    const auto s0 = detail::dominant_state(qubit, 0.0, gamma(0.0));
    const auto s1 = detail::dominant_state(qubit, tau, gamma(tau));
    const cplx overlap = std::conj(s0.e) * s1.e + std::conj(s0.g) * s1.g;
    // exp(-∫<Psi|dPsi>) with <Psi|dPsi> = i A(t)
    const cplx z = std::sqrt(s0.eps * s1.eps) * overlap * std::polar(1.0, -r.value);
    out.modulus = std::abs(z);
    out.error = r.error;
    if (out.modulus < 1e-15) {
        out.defined = false;
        return out;
    }
    out.reduced = reduce_angle(std::arg(z));
    return out;
}

inline FunctionalPhase phase_exact_functional(const QubitSpec& qubit, const BathSpec& bath,
                                              const GammaMethod& method,
                                              const PhaseTolerances& tol = {}) {
    return phase_exact_functional(
        qubit, make_gamma_evaluator(bath, method, qubit.period(), tol.interpolation_tol()), tol);
}

// First-order corrections in gamma0 for the four regimes with closed forms.
inline double delta_phase_closed(const QubitSpec& qubit, const BathSpec& bath, Regime regime) {
    qubit.validate();
    bath.validate();
    if (!closed_form_supported(bath.exponent_n, regime))
        throw UsageError("no closed-form phase correction for exponent " +
                         std::to_string(bath.exponent_n) + " in regime " +
                         std::string(to_string(regime)));
    constexpr double pi = std::numbers::pi;
    const double s = std::sin(qubit.theta0);
    const double envelope = s * s * std::cos(qubit.theta0);
    const double g = bath.gamma0;
    const double W = qubit.omega;
    const double T = bath.temperature;
    const double L = bath.cutoff_lambda;
    if (bath.exponent_n == 1) {
        if (regime == Regime::HighT) return pi * pi * g * (pi * T / W) * envelope;
        return pi * g * (std::log(2.0 * pi * L / W) - 1.0) * envelope;
    }
    if (regime == Regime::HighT) return pi * g * (2.0 * T / L) * envelope;
    return pi * g * envelope;
}

// (Omega/2) sin^2 theta0 cos theta0 ∫_0^tau Gamma dt; Gamma is linear in gamma0,
// so this is the first-order term for any bath and temperature.
inline double delta_phase_generic(const QubitSpec& qubit, const GammaEvaluator& gamma,
                                  const PhaseTolerances& tol = {}) {
    qubit.validate();
    const double s = std::sin(qubit.theta0);
    const double envelope = s * s * std::cos(qubit.theta0);
    if (envelope == 0.0) return 0.0;
    const auto br = detail::time_breaks(qubit.period());
    const auto r = quad::integrate_or_throw([&](double t) { return gamma(t); },
                                            std::span<const double>(br), tol.time,
                                            "delta_phase_generic");
    return 0.5 * qubit.omega * envelope * r.value;
}

inline double delta_phase_generic(const QubitSpec& qubit, const BathSpec& bath,
                                  const GammaMethod& method, const PhaseTolerances& tol = {}) {
    return delta_phase_generic(
        qubit, make_gamma_evaluator(bath, method, qubit.period(), tol.interpolation_tol()), tol);
}

enum class PhaseRoute { Integral, Functional, Both };
enum class DeltaRoute { Closed, Generic, Both };

struct PhaseResult {
    double phi_unitary{0.0};
    double phi_exact{0.0}; // integral route, reduced
    double phi_exact_raw{0.0};
    long winding{0};
    std::optional<double> phi_functional;
    std::optional<double> delta_closed;
    std::optional<double> delta_generic;
    double delta_perturbative{0.0}; // closed when available, else generic
    double residual{0.0};           // phi_exact - phi_unitary - delta, wrapped into (-pi, pi]
    std::string gamma_route;
    std::string delta_route;
};

inline PhaseResult compute_phase(const QubitSpec& qubit, const BathSpec& bath,
                                 const GammaMethod& method, PhaseRoute phase_route,
                                 DeltaRoute delta_route, const PhaseTolerances& tol = {}) {
    const auto gamma =
        make_gamma_evaluator(bath, method, qubit.period(), tol.interpolation_tol());
    PhaseResult out;
    out.gamma_route = gamma.route;
    out.phi_unitary = phase_unitary(qubit);

    const auto integral = phase_exact_integral(qubit, gamma, tol);
    out.phi_exact = integral.reduced;
    out.phi_exact_raw = integral.raw;
    out.winding = integral.winding;
    if (phase_route != PhaseRoute::Integral) {
        const auto functional = phase_exact_functional(qubit, gamma, tol);
        if (!functional.defined)
            throw NumericalError("phase_exact_functional: modulus below 1e-15, arg undefined");
        out.phi_functional = functional.reduced;
        if (phase_route == PhaseRoute::Functional) out.phi_exact = functional.reduced;
    }

    if (delta_route != DeltaRoute::Generic) {
        const Regime r = method.regime ? *method.regime
                                       : classify_regime(bath, method.high_t_threshold).tag;
        if (closed_form_supported(bath.exponent_n, r))
            out.delta_closed = delta_phase_closed(qubit, bath, r);
        else if (delta_route == DeltaRoute::Closed)
            throw UsageError("closed-form phase correction needs a zero_t or high_t regime, bath is " +
                             std::string(to_string(r)));
    }
    if (delta_route != DeltaRoute::Closed) out.delta_generic = delta_phase_generic(qubit, gamma, tol);

    if (out.delta_closed) {
        out.delta_perturbative = *out.delta_closed;
        out.delta_route = "closed";
    } else {
        out.delta_perturbative = *out.delta_generic;
        out.delta_route = "generic";
    }
    out.residual = angle_difference(out.phi_exact, out.phi_unitary + out.delta_perturbative);
    return out;
}

} // namespace dephaser
