// decoherence_factor.hpp: diffusion coefficient D(t), decoherence factor Γ(t), visibility
//
//   Γ(t) = 4 ∫_0^∞ dω J(ω) coth(ω/2T) (1 − cos ωt) / ω²
//   D(t) =   ∫_0^∞ dω J(ω) coth(ω/2T) sin(ωt) / ω          (dΓ/dt = 4 D)
//
// Closed forms exist for (n, regime) ∈ {1, 3} × {ZeroT, HighT}; the quadrature
// route works at any temperature and doubles as their oracle.

#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "dephaser/environment.hpp"
#include "dephaser/errors.hpp"
#include "dephaser/parallel.hpp"
#include "dephaser/quadrature.hpp"

namespace dephaser {

struct GammaMethod {
    enum class Kind { ClosedForm, Quadrature };

    Kind kind{Kind::Quadrature};
    // ClosedForm only; when empty the regime is taken from classify_regime.
    std::optional<Regime> regime{};
    quad::Tolerances tol{};
    double high_t_threshold{default_high_t_threshold};

    static GammaMethod closed(std::optional<Regime> r = std::nullopt) {
        GammaMethod m;
        m.kind = Kind::ClosedForm;
        m.regime = r;
        return m;
    }
    static GammaMethod quadrature(quad::Tolerances tol = {}) {
        GammaMethod m;
        m.kind = Kind::Quadrature;
        m.tol = tol;
        return m;
    }

    bool operator==(const GammaMethod&) const = default;
};

inline bool closed_form_supported(int exponent_n, Regime r) {
    return (exponent_n == 1 || exponent_n == 3) && r != Regime::GeneralT;
}

// Regime a closed-form method will use for this bath.
inline Regime closed_form_regime(const BathSpec& bath, const GammaMethod& method) {
    const Regime r = method.regime ? *method.regime
                                   : classify_regime(bath, method.high_t_threshold).tag;
    if (!closed_form_supported(bath.exponent_n, r))
        throw UsageError("no closed form for exponent " + std::to_string(bath.exponent_n) +
                         " in regime " + std::string(to_string(r)));
    return r;
}

// True when the classifier agrees with the regime a closed form is evaluated in.
inline bool closed_form_within_validity(const BathSpec& bath, Regime r,
                                        double threshold = default_high_t_threshold) {
    return classify_regime(bath, threshold).tag == r;
}

inline double gamma_closed(const BathSpec& bath, Regime regime, double t) {
    bath.validate();
    if (!(t >= 0.0)) throw UsageError("gamma_closed: t must be >= 0");
    if (!closed_form_supported(bath.exponent_n, regime))
        throw UsageError("no closed form for exponent " + std::to_string(bath.exponent_n) +
                         " in regime " + std::string(to_string(regime)));
    const double g = bath.gamma0;
    const double L = bath.cutoff_lambda;
    const double T = bath.temperature;
    const double lt2 = (L * t) * (L * t);
    if (bath.exponent_n == 1) {
        if (regime == Regime::HighT) return std::numbers::pi * g * T * t;
        return 0.5 * g * std::log1p(lt2);
    }
    if (regime == Regime::HighT) return (2.0 * T * g / L) * lt2 / (1.0 + lt2);
    // γ0 u²/(1+u)² written to stay finite for huge Λt
    const double r = lt2 / (1.0 + lt2);
    return g * r * r;
}

namespace detail {

// sin(x)/x
inline double sinc(double x) {
    const double ax = std::abs(x);
    if (ax < 1e-4) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

// 4 J(ω) coth(ω/2T) = γ0 (ω/Λ)^{n-1} e^{-ω/Λ} · ω coth(ω/2T), finite at ω = 0
inline double thermal_weight(const BathSpec& bath, double w) {
    const double L = bath.cutoff_lambda;
    const double u = w / L;
    // ω coth(ω/2T): ω at T = 0, 2T·x coth x with x = ω/2T otherwise
    const double k = bath.temperature > 0.0
                         ? 2.0 * bath.temperature * x_coth_x(w / (2.0 * bath.temperature))
                         : w;
    const double pw = bath.exponent_n == 1 ? 1.0 : u * u;
    return bath.gamma0 * pw * std::exp(-u) * k;
}

inline double omega_max(const BathSpec& bath, const quad::Tolerances& tol) {
    const double log_term = tol.abs_tol > 0.0 ? std::log(1.0 / tol.abs_tol) : 40.0;
    return bath.cutoff_lambda * std::max(40.0, log_term);
}

// Panels no wider than half an oscillation period π/t and no wider than Λ.
inline std::vector<double> frequency_breaks(const BathSpec& bath, double t,
                                            const quad::Tolerances& tol) {
    const double wmax = omega_max(bath, tol);
    double width = bath.cutoff_lambda;
    if (t > 0.0) width = std::min(width, std::numbers::pi / t);
    const double count = std::ceil(wmax / width);
    if (count > static_cast<double>(tol.max_panels))
        throw ResourceError("frequency panel budget exceeded at t = " + std::to_string(t) +
                            " (" + std::to_string(count) + " panels)");
    const auto n = static_cast<std::size_t>(count);
    std::vector<double> breaks(n + 1);
    for (std::size_t i = 0; i <= n; ++i) breaks[i] = wmax * static_cast<double>(i) / count;
    return breaks;
}

} // namespace detail

inline quad::Result gamma_quadrature_result(const BathSpec& bath, double t,
                                            const quad::Tolerances& tol = {}) {
    bath.validate();
    if (!(t >= 0.0)) throw UsageError("gamma_quadrature: t must be >= 0");
    if (t == 0.0 || bath.gamma0 == 0.0) return {};
    // (1 − cos ωt)/ω² = (t²/2) sinc²(ωt/2)
    auto integrand = [&bath, t](double w) {
        const double s = detail::sinc(0.5 * w * t);
        return detail::thermal_weight(bath, w) * 0.5 * t * t * s * s;
    };
    const auto breaks = detail::frequency_breaks(bath, t, tol);
    return quad::integrate(integrand, std::span<const double>(breaks), tol);
}

inline double gamma_quadrature(const BathSpec& bath, double t, const quad::Tolerances& tol = {}) {
    const auto r = gamma_quadrature_result(bath, t, tol);
    if (!r.converged)
        throw NumericalError("gamma_quadrature at t = " + std::to_string(t) +
                                 " did not converge, error estimate " + std::to_string(r.error),
                             r.error);
    return std::max(0.0, r.value);
}

inline quad::Result diffusion_coefficient_result(const BathSpec& bath, double t,
                                                 const quad::Tolerances& tol = {}) {
    bath.validate();
    if (!(t >= 0.0)) throw UsageError("diffusion_coefficient: t must be >= 0");
    if (t == 0.0 || bath.gamma0 == 0.0) return {};
    // J coth sin(ωt)/ω = (1/4)(4 J coth) · t sinc(ωt)
    auto integrand = [&bath, t](double w) {
        return 0.25 * detail::thermal_weight(bath, w) * t * detail::sinc(w * t);
    };
    const auto breaks = detail::frequency_breaks(bath, 2.0 * t, tol);
    return quad::integrate(integrand, std::span<const double>(breaks), tol);
}

inline double diffusion_coefficient(const BathSpec& bath, double t,
                                    const quad::Tolerances& tol = {}) {
    const auto r = diffusion_coefficient_result(bath, t, tol);
    if (!r.converged)
        throw NumericalError("diffusion_coefficient at t = " + std::to_string(t) +
                                 " did not converge, error estimate " + std::to_string(r.error),
                             r.error);
    return r.value;
}

// Γ(t) by whichever route the method selects.
inline double gamma_value(const BathSpec& bath, const GammaMethod& method, double t) {
    if (method.kind == GammaMethod::Kind::ClosedForm)
        return gamma_closed(bath, closed_form_regime(bath, method), t);
    return gamma_quadrature(bath, t, method.tol);
}

inline double visibility(double gamma) {
    if (!(gamma >= 0.0)) throw UsageError("visibility: gamma must be >= 0");
    return std::exp(-gamma);
}

struct DecoherenceCurve {
    std::vector<double> times;
    std::vector<double> gamma_values;
    GammaMethod method;
    BathSpec bath;
    bool outside_validity{false}; // closed form used where the classifier disagrees
};

inline DecoherenceCurve sample_curve(const BathSpec& bath, const GammaMethod& method, double t_max,
                                     std::size_t samples, std::size_t jobs = 1) {
    bath.validate();
    if (!(t_max > 0.0) || !std::isfinite(t_max))
        throw UsageError("sample_curve: t_max must be finite and > 0");
    if (samples < 2) throw UsageError("sample_curve: need at least 2 samples");

    DecoherenceCurve curve;
    curve.method = method;
    curve.bath = bath;
    if (method.kind == GammaMethod::Kind::ClosedForm) {
        const Regime r = closed_form_regime(bath, method);
        curve.outside_validity = !closed_form_within_validity(bath, r, method.high_t_threshold);
    }
    curve.times.resize(samples);
    const double step = t_max / static_cast<double>(samples - 1);
    for (std::size_t i = 0; i < samples; ++i) curve.times[i] = step * static_cast<double>(i);
    curve.times.back() = t_max;

    curve.gamma_values = parallel_map<double>(samples, jobs, [&](std::size_t i) {
        const double t = curve.times[i];
        try {
            return gamma_value(bath, method, t);
        } catch (const NumericalError& e) {
            throw NumericalError(std::string(e.what()) + " [sample t = " + std::to_string(t) + "]",
                                 e.error_estimate);
        }
    });
    return curve;
}

} // namespace dephaser
