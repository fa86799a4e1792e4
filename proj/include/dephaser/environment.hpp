// environment.hpp: bath and qubit parameters, spectral density, regime classification
//
// Units: hbar = k_B = 1 and frequencies, temperatures and cutoffs are measured
// in units of the qubit splitting Omega (default 1). Times are in units of 1/Omega.

#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <string_view>

#include "dephaser/errors.hpp"

namespace dephaser {

struct BathSpec {
    int exponent_n{1};          // 1 = ohmic, 3 = supraohmic
    double gamma0{0.3};         // dissipative coupling
    double cutoff_lambda{100.0};
    double temperature{0.0};

    // Throws UsageError on out-of-domain values. gamma0 = 0 is accepted as the
    // decoupled limit used by unitary checks.
    void validate() const {
        if (exponent_n != 1 && exponent_n != 3)
            throw UsageError("bath exponent must be 1 or 3, got " + std::to_string(exponent_n));
        if (!(gamma0 >= 0.0) || !std::isfinite(gamma0))
            throw UsageError("gamma0 must be finite and >= 0");
        if (!(cutoff_lambda > 0.0) || !std::isfinite(cutoff_lambda))
            throw UsageError("cutoff must be finite and > 0");
        if (!(temperature >= 0.0) || !std::isfinite(temperature))
            throw UsageError("temperature must be finite and >= 0");
    }

    // Lambda / (2T); infinite at T = 0.
    double regime_ratio() const {
        return temperature > 0.0 ? cutoff_lambda / (2.0 * temperature)
                                 : std::numeric_limits<double>::infinity();
    }

    bool operator==(const BathSpec&) const = default;
};

struct QubitSpec {
    double omega{1.0};
    double theta0{std::numbers::pi / 2};

    void validate() const {
        if (!(omega > 0.0) || !std::isfinite(omega))
            throw UsageError("omega must be finite and > 0");
        if (!(theta0 >= 0.0 && theta0 <= std::numbers::pi))
            throw UsageError("theta0 must lie in [0, pi]");
    }

    // Quasicyclic period.
    double period() const { return 2.0 * std::numbers::pi / omega; }

    bool operator==(const QubitSpec&) const = default;
};

enum class Regime { ZeroT, HighT, GeneralT };

inline std::string_view to_string(Regime r) {
    switch (r) {
        case Regime::ZeroT: return "zero_t";
        case Regime::HighT: return "high_t";
        case Regime::GeneralT: return "general_t";
    }
    return "?";
}

struct TemperatureRegime {
    Regime tag{Regime::ZeroT};
    double validity_ratio{0.0}; // 2T / Lambda
};

inline constexpr double default_high_t_threshold = 10.0;

// J(omega) = (gamma0/4) omega^n Lambda^(1-n) exp(-omega/Lambda)
inline double spectral_density(const BathSpec& bath, double omega_freq) {
    if (!(omega_freq >= 0.0))
        throw UsageError("spectral_density: frequency must be >= 0");
    const double L = bath.cutoff_lambda;
    const double u = omega_freq / L;
    // omega^n Lambda^(1-n) = Lambda * u^n
    return 0.25 * bath.gamma0 * L * std::pow(u, bath.exponent_n) * std::exp(-u);
}

inline TemperatureRegime classify_regime(const BathSpec& bath,
                                         double threshold = default_high_t_threshold) {
    bath.validate();
    const double ratio = 2.0 * bath.temperature / bath.cutoff_lambda;
    if (bath.temperature == 0.0) return {Regime::ZeroT, 0.0};
    if (ratio >= threshold) return {Regime::HighT, ratio};
    return {Regime::GeneralT, ratio};
}

namespace detail {
inline constexpr double coth_series_switch = 1e-2;
inline constexpr double coth_saturation = 20.0; // 2 e^{-40} < 2^-53
} // namespace detail

// coth(x) for x > 0. Laurent series near 0; exactly 1 once e^{-2x} is below rounding.
inline double coth_kernel(double x) {
    if (!(x > 0.0)) throw UsageError("coth_kernel: argument must be > 0");
    if (x < detail::coth_series_switch) {
        const double x2 = x * x;
        return 1.0 / x + x / 3.0 - x * x2 / 45.0;
    }
    if (x > detail::coth_saturation) return 1.0;
    return 1.0 / std::tanh(x);
}

// x coth(x) for x >= 0, finite at 0 (-> 1).
inline double x_coth_x(double x) {
    if (x < detail::coth_series_switch) {
        const double x2 = x * x;
        return 1.0 + x2 / 3.0 - x2 * x2 / 45.0;
    }
    if (x > detail::coth_saturation) return x;
    return x / std::tanh(x);
}

} // namespace dephaser
