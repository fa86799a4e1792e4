#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("dephaser_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    return dir / name;
}

Run run(const std::string& args, const std::string& env = "") {
    const auto out = scratch("stdout.txt"), err = scratch("stderr.txt");
    const std::string cmd = env + " " + DEPHASER_CLI + " " + args + " >" + out.string() + " 2>" +
                            err.string();
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

std::size_t count_lines(const std::string& s, char prefix) {
    std::size_t n = 0;
    std::istringstream in(s);
    for (std::string line; std::getline(in, line);)
        if (!line.empty() && line[0] == prefix) ++n;
    return n;
}

} // namespace

TEST(Cli, GammaWritesConfigEchoHeaderAndRows) {
    const auto r = run("gamma --exponent 1 --gamma0 0.3 --cutoff 100 --temperature 1000 "
                       "--gamma-method closed --regime high_t --t-max 0.002122 --samples 3");
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("# [bath]\n"), std::string::npos);
    EXPECT_NE(r.out.find("# temperature = 1000\n"), std::string::npos);
    EXPECT_NE(r.out.find("\nt,gamma,visibility\n"), std::string::npos);
    EXPECT_NE(r.out.find("\n0.001061,0.99996"), std::string::npos) << r.out;
    EXPECT_EQ(count_lines(r.out, '0'), 3u);
}

TEST(Cli, UsageErrorsExitOne) {
    for (const char* args : {"gamma --t-max 0", "gamma --exponent 2", "gamma --bogus 1", "",
                             "phase --delta sideways", "dectime --probe-max -1"}) {
        const auto r = run(args);
        EXPECT_EQ(r.code, 1) << args;
        EXPECT_EQ(count_lines(r.err, 'd'), 1u) << args << ": " << r.err;
    }
}

TEST(Cli, IoErrorsExitThree) {
    EXPECT_EQ(run("gamma --config /nonexistent/x.ini").code, 3);
    EXPECT_EQ(run("gamma --out /nonexistent/dir/x.csv").code, 3);
}

TEST(Cli, NumericalFailureExitsTwo) {
    const auto r = run("gamma --abs-tol 1e-300 --rel-tol 1e-300 --t-max 1 --samples 2");
    EXPECT_EQ(r.code, 2) << r.out;
    EXPECT_EQ(count_lines(r.err, 'd'), 1u);
}

TEST(Cli, FlagsOverrideConfigFile) {
    const auto cfg = scratch("run.ini");
    std::ofstream(cfg) << "[bath]\nexponent = 3\ngamma0 = 0.3\ntemperature = 0\n[method]\nkind = closed\n";
    const auto r = run("gamma --config " + cfg.string() + " --gamma0 0.6 --t-max 100 --samples 2");
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("# gamma0 = 0.6\n"), std::string::npos);
    EXPECT_NE(r.out.find("# exponent = 3\n"), std::string::npos);
    EXPECT_NE(r.out.find("\n100,0.59999"), std::string::npos) << r.out;
}

TEST(Cli, PhaseGridIsIdenticalAcrossJobCounts) {
    const auto cfg = scratch("grid.ini");
    std::ofstream(cfg) << "[bath]\nexponent = 1\ntemperature = 0\n[grid]\ngamma0 = 0.01, 0.02\n"
                          "theta0 = 0.5, 0.785398, 2\n";
    const auto a = run("phase --config " + cfg.string() + " --jobs 1");
    const auto b = run("phase --config " + cfg.string(), "DEPHASER_JOBS=3");
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    EXPECT_NE(a.out.find("theta0,gamma0,temperature,cutoff,exponent,omega,phi_unitary,phi_exact,"
                         "phi_raw,phi_functional,delta_closed,delta_generic,residual\n"),
              std::string::npos);
    EXPECT_EQ(count_lines(a.out, '0') + count_lines(a.out, '2'), 6u);
}

TEST(Cli, DectimeVerdicts) {
    const auto cfg = scratch("dec.ini");
    std::ofstream(cfg) << "[bath]\ngamma0 = 0.3\ncutoff = 100\n[grid]\nexponent = 1, 3\n"
                          "temperature = 0\n";
    const auto r = run("dectime --config " + cfg.string());
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("verdict,t_d,plateau,formula_t_d"), std::string::npos);
    EXPECT_NE(r.out.find(",time_found,0.280137"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find(",saturates,,0.3000"), std::string::npos) << r.out;
}

TEST(Cli, Figure1WritesSixFiles) {
    const auto dir = scratch("fig1");
    const auto r = run("figure1 --out-dir " + dir.string() + " --samples 5 --jobs 2");
    ASSERT_EQ(r.code, 0) << r.err;
    std::size_t files = 0;
    for (const auto& e : fs::recursive_directory_iterator(dir)) files += e.is_regular_file();
    EXPECT_EQ(files, 6u);
    const auto ohmic = slurp(dir / "gamma0_0.3" / "ohmic.csv");
    EXPECT_NE(ohmic.find("t,gamma_t1000_closed,gamma_t1000_quadrature,gamma_t1p55_quadrature,"
                         "gamma_t0_quadrature,gamma_t0_closed\n"),
              std::string::npos);
    EXPECT_EQ(run("figure1 --out-dir /proc/dephaser_forbidden").code, 3);
}
