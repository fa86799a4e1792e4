// dephaser: command-line front end
//
//   dephaser gamma    --exponent 1 --gamma0 0.3 --cutoff 100 --temperature 0 --t-max 1 ...
//   dephaser figure1  --out-dir fig1
//   dephaser phase    --theta0 0.785 --phase-method both --delta both ...
//   dephaser dectime  --exponent 3 --temperature 0 ...
//   dephaser accept
//
// Exit codes: 0 success, 1 usage error, 2 numerical failure, 3 I/O failure.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "dephaser/acceptance.hpp"
#include "dephaser/commands.hpp"
#include "dephaser/config.hpp"
#include "dephaser/errors.hpp"

namespace {

using namespace dephaser;

struct Flags {
    std::optional<std::string> config;
    std::optional<int> exponent;
    std::optional<double> gamma0, cutoff, temperature, omega, theta0;
    std::optional<std::string> gamma_method, regime, out;
    std::optional<double> abs_tol, rel_tol, threshold;
    std::optional<int> precision;
    std::size_t jobs{0};
};

void add_common(CLI::App* cmd, Flags& f, bool with_qubit) {
    cmd->add_option("--config", f.config, "config file (key = value with [sections])");
    cmd->add_option("--exponent", f.exponent, "spectral exponent n (1 or 3)");
    cmd->add_option("--gamma0", f.gamma0, "dissipative coupling");
    cmd->add_option("--cutoff", f.cutoff, "cutoff frequency Lambda");
    cmd->add_option("--temperature", f.temperature, "bath temperature");
    cmd->add_option("--gamma-method", f.gamma_method, "closed | quadrature")
        ->check(CLI::IsMember({"closed", "quadrature"}));
    cmd->add_option("--regime", f.regime, "closed-form regime: auto | zero_t | high_t")
        ->check(CLI::IsMember({"auto", "zero_t", "high_t"}));
    cmd->add_option("--abs-tol", f.abs_tol, "quadrature absolute tolerance");
    cmd->add_option("--rel-tol", f.rel_tol, "quadrature relative tolerance");
    cmd->add_option("--high-t-threshold", f.threshold, "2T/Lambda needed for the high-T regime");
    cmd->add_option("--out", f.out, "output CSV path ('-' for stdout)");
    cmd->add_option("--precision", f.precision, "significant digits in CSV output");
    cmd->add_option("--jobs", f.jobs, "worker threads (default: DEPHASER_JOBS or all cores)");
    if (with_qubit) {
        cmd->add_option("--omega", f.omega, "qubit splitting Omega");
        cmd->add_option("--theta0", f.theta0, "initial Bloch polar angle (radians)");
    }
}

// Config file first, flags on top.
RunConfig effective_config(const Flags& f) {
    RunConfig cfg;
    if (f.config) cfg = load_config(*f.config);
    if (f.exponent) cfg.bath.exponent_n = *f.exponent;
    if (f.gamma0) cfg.bath.gamma0 = *f.gamma0;
    if (f.cutoff) cfg.bath.cutoff_lambda = *f.cutoff;
    if (f.temperature) cfg.bath.temperature = *f.temperature;
    if (f.omega) cfg.qubit.omega = *f.omega;
    if (f.theta0) cfg.qubit.theta0 = *f.theta0;
    if (f.gamma_method)
        cfg.method.kind = *f.gamma_method == "closed" ? GammaMethod::Kind::ClosedForm
                                                      : GammaMethod::Kind::Quadrature;
    if (f.regime) {
        if (*f.regime == "auto") cfg.method.regime.reset();
        else cfg.method.regime = *f.regime == "zero_t" ? Regime::ZeroT : Regime::HighT;
    }
    if (f.abs_tol) cfg.method.tol.abs_tol = *f.abs_tol;
    if (f.rel_tol) cfg.method.tol.rel_tol = *f.rel_tol;
    if (f.threshold) cfg.method.high_t_threshold = *f.threshold;
    if (f.out) cfg.output.path = *f.out;
    if (f.precision) cfg.output.precision = *f.precision;
    validate(cfg);
    return cfg;
}

void emit(const RunConfig& cfg, const std::string& csv) {
    if (cfg.output.path == "-" || cfg.output.path.empty())
        std::cout << csv;
    else
        write_text(cfg.output.path, csv);
}

template <class Fn>
int guarded(Fn&& fn) {
    try {
        fn();
        return 0;
    } catch (const UsageError& e) {
        std::cerr << "dephaser: usage error: " << e.what() << "\n";
        return 1;
    } catch (const IoError& e) {
        std::cerr << "dephaser: I/O error: " << e.what() << "\n";
        return 3;
    } catch (const NumericalError& e) {
        std::cerr << "dephaser: numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const ResourceError& e) {
        std::cerr << "dephaser: numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "dephaser: numerical failure: " << e.what() << "\n";
        return 2;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pure-dephasing qubit: decoherence factor, geometric phase, decoherence times"};
    app.require_subcommand(1);

    Flags gamma_flags;
    double t_max = 1.0;
    std::size_t samples = 201;
    auto* gamma_cmd = app.add_subcommand("gamma", "sample Gamma(t) and visibility to CSV");
    add_common(gamma_cmd, gamma_flags, false);
    gamma_cmd->add_option("--t-max", t_max, "last sample time (units of 1/Omega)");
    gamma_cmd->add_option("--samples", samples, "number of samples including t = 0");

    std::string out_dir;
    Figure1Options fig;
    std::size_t fig_jobs = 0;
    auto* fig_cmd = app.add_subcommand("figure1", "write the Gamma(t) comparison tables");
    fig_cmd->add_option("--out-dir", out_dir, "output directory")->required();
    fig_cmd->add_option("--t-max", fig.t_max, "last sample time");
    fig_cmd->add_option("--samples", fig.samples, "samples per curve");
    fig_cmd->add_option("--probe-max", fig.t_probe_max, "decoherence-time probe limit");
    fig_cmd->add_option("--jobs", fig_jobs, "worker threads");

    Flags phase_flags;
    std::string phase_method = "both", delta = "both";
    auto* phase_cmd = app.add_subcommand("phase", "geometric phase and its corrections");
    add_common(phase_cmd, phase_flags, true);
    phase_cmd->add_option("--phase-method", phase_method, "integral | functional | both")
        ->check(CLI::IsMember({"integral", "functional", "both"}));
    phase_cmd->add_option("--delta", delta, "closed | generic | both")
        ->check(CLI::IsMember({"closed", "generic", "both"}));

    Flags dec_flags;
    double probe_max = default_probe_max;
    auto* dec_cmd = app.add_subcommand("dectime", "decoherence time and observability");
    add_common(dec_cmd, dec_flags, true);
    dec_cmd->add_option("--probe-max", probe_max, "largest time probed while bracketing");

    app.add_subcommand("accept", "run the acceptance suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "dephaser: usage error: " << e.what() << "\n";
        return 1;
    }

    if (*gamma_cmd) {
        return guarded([&] {
            const auto cfg = effective_config(gamma_flags);
            emit(cfg, gamma_csv(cfg, t_max, samples, resolve_jobs(gamma_flags.jobs)));
        });
    }
    if (*fig_cmd) {
        return guarded([&] {
            write_files(out_dir, render_figure1(fig, resolve_jobs(fig_jobs)));
        });
    }
    if (*phase_cmd) {
        return guarded([&] {
            const auto cfg = effective_config(phase_flags);
            const auto pr = phase_method == "integral"     ? PhaseRoute::Integral
                            : phase_method == "functional" ? PhaseRoute::Functional
                                                           : PhaseRoute::Both;
            const auto dr = delta == "closed"    ? DeltaRoute::Closed
                            : delta == "generic" ? DeltaRoute::Generic
                                                 : DeltaRoute::Both;
            emit(cfg, phase_csv(cfg, pr, dr, resolve_jobs(phase_flags.jobs)));
        });
    }
    if (*dec_cmd) {
        return guarded([&] {
            const auto cfg = effective_config(dec_flags);
            if (!(probe_max > 0.0)) throw UsageError("--probe-max must be > 0");
            emit(cfg, dectime_csv(cfg, probe_max, resolve_jobs(dec_flags.jobs)));
        });
    }
    // accept
    bool all = true;
    for (const auto& r : acceptance::run_all()) {
        std::cout << acceptance::report_line(r) << "\n";
        all = all && r.passed;
    }
    return all ? 0 : 2;
}
