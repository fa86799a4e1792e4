// commands.hpp: CSV-producing front ends shared by the CLI and the test suites

#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dephaser/config.hpp"
#include "dephaser/decoherence_factor.hpp"
#include "dephaser/decoherence_time.hpp"
#include "dephaser/geometric_phase.hpp"
#include "dephaser/parallel.hpp"

namespace dephaser {

inline std::string method_label(const GammaMethod& m) {
    return m.kind == GammaMethod::Kind::ClosedForm ? "closed" : "quadrature";
}

inline std::string gamma_csv(const RunConfig& cfg, double t_max, std::size_t samples,
                             std::size_t jobs) {
    validate(cfg);
    if (!cfg.grid.empty())
        throw UsageError("grid sweeps are supported by the phase and dectime commands only");
    const auto curve = sample_curve(cfg.bath, cfg.method, t_max, samples, jobs);
    CsvTable table({"t", "gamma", "visibility"}, cfg.output.precision);
    table.add_comment_block(serialize(cfg));
    table.add_comment_block("t_max = " + format_exact(t_max) +
                            "\nsamples = " + std::to_string(samples));
    if (curve.outside_validity)
        table.add_comment_block("warning: closed form evaluated outside its temperature regime");
    for (std::size_t i = 0; i < curve.times.size(); ++i)
        table.add_row({curve.times[i], curve.gamma_values[i], visibility(curve.gamma_values[i])});
    return table.str();
}

inline std::string phase_csv(const RunConfig& cfg, PhaseRoute phase_route, DeltaRoute delta_route,
                             std::size_t jobs, const PhaseTolerances& tol = {}) {
    const auto points = expand_grid(cfg);
    std::vector<std::string> header{"theta0", "gamma0", "temperature", "cutoff", "exponent",
                                    "omega",  "phi_unitary", "phi_exact", "phi_raw"};
    if (phase_route == PhaseRoute::Both) header.push_back("phi_functional");
    if (delta_route != DeltaRoute::Generic) header.push_back("delta_closed");
    if (delta_route != DeltaRoute::Closed) header.push_back("delta_generic");
    header.push_back("residual");
    CsvTable table(header, cfg.output.precision);
    table.add_comment_block(serialize(cfg));

    const auto results = parallel_map<PhaseResult>(points.size(), jobs, [&](std::size_t i) {
        return compute_phase(points[i].qubit, points[i].bath, points[i].method, phase_route,
                             delta_route, tol);
    });
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& p = points[i];
        const auto& r = results[i];
        std::vector<CsvTable::Cell> row{p.qubit.theta0,
                                        p.bath.gamma0,
                                        p.bath.temperature,
                                        p.bath.cutoff_lambda,
                                        static_cast<double>(p.bath.exponent_n),
                                        p.qubit.omega,
                                        r.phi_unitary,
                                        r.phi_exact,
                                        r.phi_exact_raw};
        if (phase_route == PhaseRoute::Both) row.emplace_back(r.phi_functional);
        if (delta_route != DeltaRoute::Generic) row.emplace_back(r.delta_closed);
        if (delta_route != DeltaRoute::Closed) row.emplace_back(r.delta_generic);
        row.emplace_back(r.residual);
        table.add_row(std::move(row));
    }
    return table.str();
}

inline constexpr double default_probe_max = 100.0;

inline std::string dectime_csv(const RunConfig& cfg, double t_probe_max, std::size_t jobs) {
    const auto points = expand_grid(cfg);
    CsvTable table({"exponent", "gamma0", "cutoff", "temperature", "omega", "verdict", "t_d",
                    "plateau", "formula_t_d", "coarse_observable", "observable", "margin"},
                   cfg.output.precision);
    table.add_comment_block(serialize(cfg));
    table.add_comment_block("t_probe_max = " + format_exact(t_probe_max));
    const auto results = parallel_map<Observability>(points.size(), jobs, [&](std::size_t i) {
        return observability_condition(points[i].bath, points[i].qubit, points[i].method,
                                       t_probe_max);
    });
    using Outcome = DecoherenceVerdict::Outcome;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& p = points[i];
        const auto& o = results[i];
        const auto& v = o.verdict;
        std::optional<double> t_d, plateau, margin, coarse;
        if (v.outcome == Outcome::TimeFound) {
            t_d = v.t_d;
            margin = o.margin;
        }
        if (v.outcome == Outcome::Saturates) plateau = v.gamma_sup;
        if (o.coarse) coarse = *o.coarse ? 1.0 : 0.0;
        table.add_row({static_cast<double>(p.bath.exponent_n), p.bath.gamma0,
                       p.bath.cutoff_lambda, p.bath.temperature, p.qubit.omega,
                       to_string(v.outcome), t_d, plateau, v.formula_estimate, coarse,
                       o.observable ? 1.0 : 0.0, margin});
        if (!v.diagnostics.empty())
            table.add_comment_block("row " + std::to_string(i + 1) + ": " + v.diagnostics);
    }
    return table.str();
}

struct Figure1Options {
    double t_max{1.0};
    std::size_t samples{101};
    double cutoff{100.0};
    double t_probe_max{default_probe_max};
    int precision{12};
};

// Relative path -> file contents. Two coupling strengths, each with an ohmic and a
// supraohmic Gamma(t) table (T = 1000 closed and quadrature, T = 1.55 and T = 0
// quadrature, T = 0 closed) and a decoherence-time summary.
inline std::map<std::string, std::string> render_figure1(const Figure1Options& opt,
                                                         std::size_t jobs) {
    if (!(opt.t_max > 0.0)) throw UsageError("figure1: t_max must be > 0");
    if (opt.samples < 2) throw UsageError("figure1: need at least 2 samples");
    std::map<std::string, std::string> files;
    const double gammas[] = {0.3, 0.03};
    const char* gamma_dirs[] = {"gamma0_0.3", "gamma0_0.03"};
    const double temps[] = {1000.0, 1.55, 0.0};

    for (int gi = 0; gi < 2; ++gi) {
        for (int n : {1, 3}) {
            const auto bath_at = [&](double T) { return BathSpec{n, gammas[gi], opt.cutoff, T}; };
            struct Column {
                BathSpec bath;
                GammaMethod method;
            };
            const Column columns[] = {
                {bath_at(1000.0), GammaMethod::closed(Regime::HighT)},
                {bath_at(1000.0), GammaMethod::quadrature()},
                {bath_at(1.55), GammaMethod::quadrature()},
                {bath_at(0.0), GammaMethod::quadrature()},
                {bath_at(0.0), GammaMethod::closed(Regime::ZeroT)},
            };
            constexpr std::size_t ncol = std::size(columns);
            std::vector<double> times(opt.samples);
            for (std::size_t i = 0; i < opt.samples; ++i)
                times[i] = opt.t_max * static_cast<double>(i) / static_cast<double>(opt.samples - 1);
            times.back() = opt.t_max;
            const auto values = parallel_map<double>(opt.samples * ncol, jobs, [&](std::size_t k) {
                const auto& c = columns[k % ncol];
                return gamma_value(c.bath, c.method, times[k / ncol]);
            });
            CsvTable table({"t", "gamma_t1000_closed", "gamma_t1000_quadrature",
                            "gamma_t1p55_quadrature", "gamma_t0_quadrature", "gamma_t0_closed"},
                           opt.precision);
            table.add_comment_block("exponent = " + std::to_string(n) +
                                    "\ngamma0 = " + format_exact(gammas[gi]) +
                                    "\ncutoff = " + format_exact(opt.cutoff) +
                                    "\nomega = 1\nquadrature abs_tol = 1e-10, rel_tol = 1e-08");
            for (std::size_t i = 0; i < opt.samples; ++i) {
                std::vector<CsvTable::Cell> row{times[i]};
                for (std::size_t c = 0; c < ncol; ++c) row.emplace_back(values[i * ncol + c]);
                table.add_row(std::move(row));
            }
            files[std::string(gamma_dirs[gi]) + (n == 1 ? "/ohmic.csv" : "/supraohmic.csv")] =
                table.str();
        }

        RunConfig cfg;
        cfg.bath = {1, gammas[gi], opt.cutoff, 0.0};
        cfg.method = GammaMethod::quadrature();
        cfg.output.precision = opt.precision;
        cfg.grid = {{"exponent", {1.0, 3.0}}, {"temperature", {temps[0], temps[1], temps[2]}}};
        files[std::string(gamma_dirs[gi]) + "/dectime.csv"] = dectime_csv(cfg, opt.t_probe_max, jobs);
    }
    return files;
}

inline void write_files(const std::filesystem::path& dir,
                        const std::map<std::string, std::string>& files) {
    for (const auto& [rel, content] : files) {
        const auto path = dir / rel;
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) throw IoError("cannot create directory '" + path.parent_path().string() + "': " + ec.message());
        std::ofstream out(path, std::ios::binary);
        if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
        out << content;
        if (!out) throw IoError("write failed for '" + path.string() + "'");
    }
}

inline void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw IoError("write failed for '" + path + "'");
}

} // namespace dephaser
