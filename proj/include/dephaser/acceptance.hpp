// acceptance.hpp: end-to-end acceptance checks, one pass/fail line per criterion

#pragma once

#include <chrono>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dephaser/commands.hpp"
#include "dephaser/decoherence_factor.hpp"
#include "dephaser/decoherence_time.hpp"
#include "dephaser/geometric_phase.hpp"
#include "dephaser/qubit_dynamics.hpp"

namespace dephaser::acceptance {

struct CriterionResult {
    int id{0};
    std::string title;
    bool passed{false};
    std::string detail;
    double seconds{0.0};
};

namespace detail {

inline std::string fmt(double v, int digits = 6) { return format_number(v, digits); }

inline bool close_rel(double value, double expected, double rel) {
    return std::abs(value - expected) <= rel * std::abs(expected);
}

inline constexpr double pi = std::numbers::pi;

inline CriterionResult ohmic_zero_t_oracle() {
    const BathSpec bath{1, 0.3, 100.0, 0.0};
    double worst = 0.0, worst_t = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double t = std::pow(10.0, -4.0 + 5.0 * i / 49.0);
        const double q = gamma_quadrature(bath, t);
        const double exact = 0.5 * 0.3 * std::log1p(1e4 * t * t);
        const double rel = std::abs(q - exact) / exact;
        if (rel > worst) {
            worst = rel;
            worst_t = t;
        }
    }
    return {1, "ohmic T=0 quadrature vs (gamma0/2) ln(1 + Lambda^2 t^2)", worst <= 1e-6,
            "max rel error " + fmt(worst) + " at t = " + fmt(worst_t) + " (tol 1e-6)"};
}

inline CriterionResult ohmic_high_t_slope() {
    const BathSpec bath{1, 0.3, 100.0, 1000.0};
    // least-squares slope over t in [0.5, 1]
    const int n = 21;
    double st = 0, sg = 0, stt = 0, stg = 0;
    for (int i = 0; i < n; ++i) {
        const double t = 0.5 + 0.5 * i / (n - 1);
        const double g = gamma_quadrature(bath, t);
        st += t;
        sg += g;
        stt += t * t;
        stg += t * g;
    }
    const double slope = (n * stg - st * sg) / (n * stt - st * st);
    const double expected = pi * 0.3 * 1000.0;
    const double rel = std::abs(slope - expected) / expected;
    return {2, "ohmic T=1000 slope of Gamma vs pi gamma0 T", rel <= 0.05,
            "slope " + fmt(slope) + " vs " + fmt(expected) + ", rel " + fmt(rel) + " (tol 5%)"};
}

inline CriterionResult supraohmic_saturation() {
    const BathSpec zero{3, 0.3, 100.0, 0.0};
    const BathSpec hot{3, 0.03, 100.0, 1000.0};
    const double g_zero = gamma_quadrature(zero, 10.0);
    const double g_hot = gamma_quadrature(hot, 10.0);
    const bool zero_ok = std::abs(g_zero - 0.3) <= 1e-3;
    const bool hot_ok = close_rel(g_hot, 0.6, 0.01);
    const auto vz = solve_decoherence_time(zero, GammaMethod::quadrature(), default_probe_max);
    const auto vh = solve_decoherence_time(hot, GammaMethod::quadrature(), default_probe_max);
    const bool verdicts = vz.outcome == DecoherenceVerdict::Outcome::Saturates &&
                          vh.outcome == DecoherenceVerdict::Outcome::Saturates;
    return {3, "supraohmic plateaus (gamma0 at T=0, 2 T gamma0 / Lambda at T=1000) and Saturates",
            zero_ok && hot_ok && verdicts,
            "Gamma(T=0, Lambda t=1e3) = " + fmt(g_zero, 8) + ", Gamma(T=1000) = " + fmt(g_hot, 8) +
                ", verdicts " + std::string(to_string(vz.outcome)) + "/" +
                std::string(to_string(vh.outcome))};
}

inline CriterionResult unitary_limit() {
    double worst = 0.0;
    const BathSpec bath{1, 0.0, 100.0, 0.0};
    for (double th : {pi / 6, pi / 4, pi / 3, pi / 2, 2 * pi / 3}) {
        const QubitSpec q{1.0, th};
        const auto r = phase_exact_integral(q, bath, GammaMethod::quadrature());
        worst = std::max(worst, std::abs(angle_difference(r.reduced, pi * (1 - std::cos(th)))));
    }
    return {4, "unitary limit phi_exact(gamma0=0) = pi(1 - cos theta0) mod 2 pi", worst <= 1e-9,
            "max deviation " + fmt(worst) + " (tol 1e-9)"};
}

inline CriterionResult perturbative_closed_forms() {
    const QubitSpec q{1.0, pi / 4};
    const double g = 0.01;
    struct Case {
        BathSpec bath;
        Regime regime;
        double spot; // 0 = no spot value
        double tol;  // generic vs closed
        bool absolute;
    };
    const Case cases[] = {
        {{1, g, 100.0, 10.0 / pi}, Regime::HighT, 0.34899, 1e-10, true},
        {{1, g, 100.0, 0.0}, Regime::ZeroT, 0.060449, 0.01, false},
        {{3, g, 100.0, 1000.0}, Regime::HighT, 0.0, 0.01, false},
        {{3, g, 100.0, 0.0}, Regime::ZeroT, 0.011107, 0.01, false},
    };
    bool ok = true;
    std::string detail;
    const char* names[] = {"(1,HighT)", "(1,ZeroT)", "(3,HighT)", "(3,ZeroT)"};
    for (int i = 0; i < 4; ++i) {
        const auto& c = cases[i];
        const double closed = delta_phase_closed(q, c.bath, c.regime);
        const double generic = delta_phase_generic(q, c.bath, GammaMethod::closed(c.regime));
        const double dev = std::abs(generic - closed);
        const bool pass_i = c.absolute ? dev <= c.tol : dev <= c.tol * std::abs(closed);
        const bool spot_ok = c.spot == 0.0 || close_rel(closed, c.spot, 2e-4);
        ok = ok && pass_i && spot_ok;
        detail += std::string(names[i]) + " closed " + fmt(closed) + " generic " + fmt(generic) +
                  (pass_i && spot_ok ? "; " : " [FAIL]; ");
    }
    return {5, "delta_phase_generic reproduces the four closed-form corrections", ok, detail};
}

inline CriterionResult quadratic_residual() {
    const QubitSpec q{1.0, pi / 4};
    bool ok = true;
    std::string detail;
    struct Case {
        const char* name;
        BathSpec bath;
        Regime regime;
    };
    const Case cases[] = {{"(1,HighT)", {1, 0.01, 100.0, 10.0 / pi}, Regime::HighT},
                          {"(3,ZeroT)", {3, 0.01, 100.0, 0.0}, Regime::ZeroT}};
    for (const auto& c : cases) {
        double R[2];
        for (int k = 0; k < 2; ++k) {
            BathSpec b = c.bath;
            b.gamma0 = k == 0 ? 0.01 : 0.02;
            const auto r = compute_phase(q, b, GammaMethod::closed(c.regime), PhaseRoute::Integral,
                                         DeltaRoute::Closed);
            R[k] = std::abs(r.residual);
        }
        const double ratio = R[1] / R[0];
        const bool pass_i = ratio >= 3.2 && ratio <= 4.8;
        ok = ok && pass_i;
        detail += std::string(c.name) + " R(0.01)=" + fmt(R[0]) + " R(0.02)=" + fmt(R[1]) +
                  " ratio " + fmt(ratio, 4) + (pass_i ? "; " : " [FAIL]; ");
    }
    return {6, "second-order residual R(2 gamma0)/R(gamma0) = 4 +- 20%", ok, detail};
}

inline CriterionResult route_equivalence() {
    struct Case {
        BathSpec bath;
        GammaMethod method;
    };
    const Case cases[] = {{{1, 0.01, 100.0, 10.0 / pi}, GammaMethod::closed(Regime::HighT)},
                          {{1, 0.1, 100.0, 1.55}, GammaMethod::quadrature()},
                          {{3, 0.3, 100.0, 0.0}, GammaMethod::closed(Regime::ZeroT)}};
    const PhaseTolerances tol;
    double worst = 0.0;
    for (const auto& c : cases) {
        const auto gamma = make_gamma_evaluator(c.bath, c.method, 2 * pi, tol.interpolation_tol());
        for (double th : {pi / 6, pi / 3, pi / 2, 2 * pi / 3}) {
            const QubitSpec q{1.0, th};
            const auto a = phase_exact_integral(q, gamma, tol);
            const auto b = phase_exact_functional(q, gamma, tol);
            if (!b.defined) return {7, "route equivalence", false, "functional undefined"};
            worst = std::max(worst, std::abs(angle_difference(a.reduced, b.reduced)));
        }
    }
    return {7, "functional vs integral phase routes on 3 baths x 4 angles", worst <= 1e-8,
            "max deviation " + fmt(worst) + " (tol 1e-8)"};
}

inline CriterionResult decoherence_times() {
    const auto hot = solve_decoherence_time({1, 0.3, 100.0, 1000.0},
                                            GammaMethod::closed(Regime::HighT), default_probe_max);
    const double hot_expected = 1.0 / (pi * 0.3 * 1000.0);
    const bool hot_ok = hot.outcome == DecoherenceVerdict::Outcome::TimeFound &&
                        close_rel(hot.t_d, hot_expected, 1e-6);
    const auto cold = solve_decoherence_time({1, 0.3, 100.0, 0.0}, GammaMethod::quadrature(),
                                             default_probe_max);
    const double cold_formula = std::exp(1.0 / 0.3) / 100.0;
    const bool cold_ok = cold.outcome == DecoherenceVerdict::Outcome::TimeFound &&
                         close_rel(cold.t_d, cold_formula, 0.02);
    const auto sup = solve_decoherence_time({3, 0.3, 100.0, 0.0}, GammaMethod::quadrature(),
                                            default_probe_max);
    const bool sup_ok = sup.outcome == DecoherenceVerdict::Outcome::Saturates;
    return {8, "decoherence times (1,HighT), (1,ZeroT) and (3,ZeroT) saturation",
            hot_ok && cold_ok && sup_ok,
            "t_D(1,HighT) = " + fmt(hot.t_d, 10) + " vs " + fmt(hot_expected, 10) +
                "; t_D(1,ZeroT) = " + fmt(cold.t_d) + " vs formula " + fmt(cold_formula) +
                "; (3,ZeroT) " + std::string(to_string(sup.outcome)) + " at " +
                fmt(sup.gamma_sup)};
}

inline CriterionResult dynamics_properties() {
    std::mt19937_64 rng(20061018);
    std::uniform_real_distribution<double> angle(0.0, pi), gam(0.0, 10.0), time(0.0, 20.0);
    std::size_t cases = 0, failures = 0;
    double worst_eig = 0.0;
    for (int i = 0; i < 2000; ++i) {
        const QubitSpec q{1.0, angle(rng)};
        double g1 = gam(rng), g2 = gam(rng);
        if (g1 > g2) std::swap(g1, g2);
        const double t = time(rng);
        const auto r1 = evolve_with_gamma(q, t, g1);
        const auto r2 = evolve_with_gamma(q, t, g2);
        ++cases;
        bool ok = r1.trace() == 1.0 && r2.trace() == 1.0;
        ok = ok && r2.purity() <= r1.purity() + 1e-15;
        ok = ok && bloch_vector(r1).norm() <= 1.0 + 1e-15 && bloch_vector(r2).norm() <= 1.0 + 1e-15;
        const auto es = eigensystem(r1, q, g1);
        const auto gen = hermitian_eigen_2x2(r1.pop_e, r1.pop_g, r1.coherence);
        const double dev = std::max(std::abs(es.eps_plus - gen.lambda_max),
                                    std::abs(es.eps_minus - gen.lambda_min));
        worst_eig = std::max(worst_eig, dev);
        ok = ok && dev <= 1e-12;
        if (!ok) ++failures;
    }
    return {9, "trace, purity, Bloch norm and eigenvalue properties (randomized)",
            failures == 0 && cases >= 1000,
            std::to_string(cases) + " cases, " + std::to_string(failures) +
                " failures, max eigenvalue deviation " + fmt(worst_eig)};
}

inline CriterionResult master_equation_order() {
    const QubitSpec q{1.0, pi / 2};
    const BathSpec bath{1, 0.3, 100.0, 1000.0};
    quad::Tolerances tight;
    tight.abs_tol = 1e-15;
    tight.rel_tol = 1e-13;
    const auto method = GammaMethod::quadrature(tight);
    const double t = 5e-4;
    const double r1 = master_equation_residual(q, bath, method, t, 2e-5);
    const double r2 = master_equation_residual(q, bath, method, t, 1e-5);
    const double ratio = r1 / r2;
    return {10, "master-equation residual converges at order dt^2", ratio >= 3.6 && ratio <= 4.4,
            "residual " + fmt(r1) + " -> " + fmt(r2) + ", ratio " + fmt(ratio, 5) +
                " (4 +- 10%)"};
}

inline std::string read_tree(const std::filesystem::path& dir) {
    std::string all;
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::recursive_directory_iterator(dir))
        if (e.is_regular_file()) files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
        std::ifstream in(f, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        all += std::filesystem::relative(f, dir).string() + "\n" + ss.str();
    }
    return all;
}

inline CriterionResult figure1_determinism() {
    namespace fs = std::filesystem;
    const fs::path root = fs::temp_directory_path() /
                          ("dephaser_accept_" + std::to_string(std::random_device{}()));
    const Figure1Options opt;
    std::string trees[3];
    const std::size_t jobs[3] = {1, 1, 4};
    for (int k = 0; k < 3; ++k) {
        const auto dir = root / ("run" + std::to_string(k));
        write_files(dir, render_figure1(opt, jobs[k]));
        trees[k] = read_tree(dir);
    }
    std::error_code ec;
    fs::remove_all(root, ec);
    const bool same = trees[0] == trees[1] && trees[0] == trees[2];
    return {11, "figure1 output byte-identical across runs and --jobs 1/4", same && !trees[0].empty(),
            std::to_string(trees[0].size()) + " bytes per run" + (same ? "" : ", outputs differ")};
}

} // namespace detail

inline std::vector<CriterionResult> run_all() {
    const std::vector<std::function<CriterionResult()>> checks = {
        detail::ohmic_zero_t_oracle, detail::ohmic_high_t_slope,   detail::supraohmic_saturation,
        detail::unitary_limit,       detail::perturbative_closed_forms, detail::quadratic_residual,
        detail::route_equivalence,   detail::decoherence_times,    detail::dynamics_properties,
        detail::master_equation_order, detail::figure1_determinism};
    std::vector<CriterionResult> out;
    int id = 1;
    for (const auto& check : checks) {
        const auto start = std::chrono::steady_clock::now();
        CriterionResult r;
        try {
            r = check();
        } catch (const std::exception& e) {
            r = {id, "criterion " + std::to_string(id), false, std::string("exception: ") + e.what()};
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        out.push_back(std::move(r));
        ++id;
    }
    return out;
}

inline std::string report_line(const CriterionResult& r) {
    return std::string(r.passed ? "[PASS]" : "[FAIL]") + " AC" + std::to_string(r.id) + " " +
           r.title + " | " + r.detail + " (" + format_number(r.seconds, 3) + " s)";
}

} // namespace dephaser::acceptance
