// decoherence_time.hpp: decoherence time from Gamma(t_D) = 1, saturation detection,
// and the t_D > tau observability window.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <string>

#include "dephaser/decoherence_factor.hpp"
#include "dephaser/environment.hpp"
#include "dephaser/errors.hpp"

namespace dephaser {

struct DecoherenceVerdict {
    enum class Outcome { TimeFound, Saturates, Indeterminate };

    Outcome outcome{Outcome::Indeterminate};
    double t_d{0.0};       // TimeFound
    double gamma_sup{0.0}; // largest Gamma seen while probing (the plateau for Saturates)
    bool observable_window{false};
    std::optional<double> formula_estimate;
    std::size_t probes{0};
    std::string diagnostics;
};

inline std::string_view to_string(DecoherenceVerdict::Outcome o) {
    switch (o) {
        case DecoherenceVerdict::Outcome::TimeFound: return "time_found";
        case DecoherenceVerdict::Outcome::Saturates: return "saturates";
        case DecoherenceVerdict::Outcome::Indeterminate: return "indeterminate";
    }
    return "?";
}

struct DecoherenceSolverOptions {
    double threshold{1.0};          // Gamma(t_D) = threshold
    double root_tolerance{1e-6};    // |Gamma(t_D) - threshold| certificate
    double time_rel_tol{1e-10};     // bisection stops at (hi - lo) <= time_rel_tol * hi
    double flat_rel_change{1e-6};   // relative Gamma change per doubling that counts as flat
    double plateau_band{1e-2};      // (3, HighT) plateau this close to 1 is left undecided
    std::size_t max_probes{400};
};

// Regime in which the closed-form t_D estimates are read for this bath/method.
inline Regime formula_regime(const BathSpec& bath, const GammaMethod& method) {
    if (method.kind == GammaMethod::Kind::ClosedForm && method.regime) return *method.regime;
    return classify_regime(bath, method.high_t_threshold).tag;
}

inline std::optional<double> decoherence_time_formula(const BathSpec& bath, Regime regime) {
    const double g = bath.gamma0;
    const double L = bath.cutoff_lambda;
    const double T = bath.temperature;
    if (g <= 0.0) return std::nullopt;
    if (bath.exponent_n == 1 && regime == Regime::HighT) return 1.0 / (std::numbers::pi * g * T);
    if (bath.exponent_n == 1 && regime == Regime::ZeroT) return std::exp(1.0 / g) / L;
    if (bath.exponent_n == 3 && regime == Regime::HighT && 2.0 * T * g / L > 1.0)
        return std::sqrt(L / (2.0 * T * g)) / L;
    return std::nullopt;
}

inline DecoherenceVerdict solve_decoherence_time(const BathSpec& bath, const GammaMethod& method,
                                                 double t_probe_max,
                                                 const DecoherenceSolverOptions& opt = {}) {
    bath.validate();
    if (!(t_probe_max > 0.0)) throw UsageError("solve_decoherence_time: t_probe_max must be > 0");
    using Outcome = DecoherenceVerdict::Outcome;

    DecoherenceVerdict v;
    const Regime regime = formula_regime(bath, method);
    v.formula_estimate = decoherence_time_formula(bath, regime);
    auto gamma = [&](double t) {
        ++v.probes;
        return gamma_value(bath, method, t);
    };

    if (bath.exponent_n == 3 && regime == Regime::HighT) {
        const double plateau = 2.0 * bath.temperature * bath.gamma0 / bath.cutoff_lambda;
        if (std::abs(plateau - opt.threshold) <= opt.plateau_band * opt.threshold) {
            v.diagnostics = "plateau 2 T gamma0 / Lambda = " + std::to_string(plateau) +
                            " within the boundary band around Gamma = 1";
            return v;
        }
    }

    double lo = 0.0, hi = 0.0;
    bool bracketed = false;
    try {
        double t = std::min(1.0 / bath.cutoff_lambda, t_probe_max);
        double prev = gamma(t);
        v.gamma_sup = prev;
        if (prev >= opt.threshold) {
            lo = 0.0;
            hi = t;
            bracketed = true;
        }
        while (!bracketed) {
            if (v.probes >= opt.max_probes) {
                v.diagnostics = "probe budget exhausted at t = " + std::to_string(t);
                return v;
            }
            if (t >= t_probe_max) {
                v.diagnostics = "reached t_probe_max = " + std::to_string(t_probe_max) +
                                " with Gamma = " + std::to_string(prev) + " still rising";
                return v;
            }
            const double next = std::min(2.0 * t, t_probe_max);
            const double g = gamma(next);
            v.gamma_sup = std::max(v.gamma_sup, g);
            if (g >= opt.threshold) {
                lo = t;
                hi = next;
                bracketed = true;
                break;
            }
            const double scale = std::max(std::abs(g), std::numeric_limits<double>::min());
            if (std::abs(g - prev) <= opt.flat_rel_change * scale && next == 2.0 * t) {
                v.outcome = Outcome::Saturates;
                v.gamma_sup = g;
                v.observable_window = true;
                return v;
            }
            prev = g;
            t = next;
        }
        while (hi - lo > opt.time_rel_tol * hi) {
            const double mid = 0.5 * (lo + hi);
            if (gamma(mid) >= opt.threshold)
                hi = mid;
            else
                lo = mid;
        }
    } catch (const ResourceError& e) {
        v.diagnostics = std::string("probing stopped: ") + e.what();
        return v;
    }

    const double root = 0.5 * (lo + hi);
    const double check = gamma(root);
    if (std::abs(check - opt.threshold) > opt.root_tolerance) {
        v.diagnostics = "root certificate failed: Gamma(" + std::to_string(root) +
                        ") = " + std::to_string(check);
        return v;
    }
    v.outcome = Outcome::TimeFound;
    v.t_d = root;
    return v;
}

struct Observability {
    std::optional<bool> coarse; // gamma0 < Lambda/T (HighT) or gamma0 < 1 (ZeroT)
    bool observable{false};     // computed t_D > tau (or saturation below 1)
    double margin{0.0};         // t_D / tau; +inf when saturating
    DecoherenceVerdict verdict;
};

inline Observability observability_condition(const BathSpec& bath, const QubitSpec& qubit,
                                             const GammaMethod& method, double t_probe_max,
                                             const DecoherenceSolverOptions& opt = {}) {
    qubit.validate();
    Observability out;
    const Regime regime = formula_regime(bath, method);
    if (regime == Regime::HighT)
        out.coarse = bath.gamma0 < bath.cutoff_lambda / bath.temperature;
    else if (regime == Regime::ZeroT)
        out.coarse = bath.gamma0 < 1.0;
    out.verdict = solve_decoherence_time(bath, method, t_probe_max, opt);
    switch (out.verdict.outcome) {
        case DecoherenceVerdict::Outcome::TimeFound:
            out.margin = out.verdict.t_d / qubit.period();
            out.observable = out.margin > 1.0;
            break;
        case DecoherenceVerdict::Outcome::Saturates:
            out.margin = std::numeric_limits<double>::infinity();
            out.observable = true;
            break;
        case DecoherenceVerdict::Outcome::Indeterminate:
            out.margin = std::numeric_limits<double>::quiet_NaN();
            out.observable = false;
            break;
    }
    out.verdict.observable_window = out.observable;
    return out;
}

} // namespace dephaser
