// config.hpp: run configuration, the `key = value` config file format, CSV formatting
//
// Config file:
//   # comment
//   [qubit]   omega, theta0
//   [bath]    exponent, gamma0, cutoff, temperature
//   [method]  kind (closed|quadrature), regime (auto|zero_t|high_t), abs_tol, rel_tol,
//             high_t_threshold
//   [grid]    <parameter> = v1, v2, ...   (parameters of [qubit] or [bath])
//   [output]  path, precision

#pragma once

#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "dephaser/decoherence_factor.hpp"
#include "dephaser/environment.hpp"
#include "dephaser/errors.hpp"

namespace dephaser {

// Shortest representation that parses back to the same double.
inline std::string format_exact(double v) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

// %g-style with `precision` significant digits, locale independent.
inline std::string format_number(double v, int precision) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, precision);
    return std::string(buf, r.ptr);
}

inline double parse_double(std::string_view text, std::string_view what) {
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double v = 0.0;
    const auto r = std::from_chars(text.data(), text.data() + text.size(), v);
    if (r.ec != std::errc{} || r.ptr != text.data() + text.size() || !std::isfinite(v))
        throw UsageError("invalid number for " + std::string(what) + ": '" + std::string(text) +
                         "'");
    return v;
}

inline constexpr std::size_t default_grid_budget = 1'000'000;

struct GridAxis {
    std::string name;
    std::vector<double> values;
    bool operator==(const GridAxis&) const = default;
};

struct OutputSpec {
    std::string path{"-"};
    int precision{12};
    bool operator==(const OutputSpec&) const = default;
};

struct RunConfig {
    QubitSpec qubit{};
    BathSpec bath{};
    GammaMethod method{GammaMethod::quadrature()};
    std::vector<GridAxis> grid;
    OutputSpec output{};

    bool operator==(const RunConfig&) const = default;
};

inline bool is_grid_parameter(std::string_view name) {
    return name == "omega" || name == "theta0" || name == "exponent" || name == "gamma0" ||
           name == "cutoff" || name == "temperature";
}

inline void set_parameter(RunConfig& cfg, std::string_view name, double value) {
    if (name == "omega") cfg.qubit.omega = value;
    else if (name == "theta0") cfg.qubit.theta0 = value;
    else if (name == "gamma0") cfg.bath.gamma0 = value;
    else if (name == "cutoff") cfg.bath.cutoff_lambda = value;
    else if (name == "temperature") cfg.bath.temperature = value;
    else if (name == "exponent") {
        if (value != std::floor(value)) throw UsageError("exponent must be an integer");
        cfg.bath.exponent_n = static_cast<int>(value);
    } else
        throw UsageError("unknown parameter '" + std::string(name) + "'");
}

inline double get_parameter(const RunConfig& cfg, std::string_view name) {
    if (name == "omega") return cfg.qubit.omega;
    if (name == "theta0") return cfg.qubit.theta0;
    if (name == "gamma0") return cfg.bath.gamma0;
    if (name == "cutoff") return cfg.bath.cutoff_lambda;
    if (name == "temperature") return cfg.bath.temperature;
    if (name == "exponent") return cfg.bath.exponent_n;
    throw UsageError("unknown parameter '" + std::string(name) + "'");
}

inline std::size_t grid_size(const RunConfig& cfg) {
    std::size_t n = 1;
    for (const auto& axis : cfg.grid) {
        if (axis.values.empty()) return 0;
        if (n > default_grid_budget * 16 / axis.values.size() + 1) return SIZE_MAX;
        n *= axis.values.size();
    }
    return n;
}

inline void validate(const RunConfig& cfg, std::size_t grid_budget = default_grid_budget) {
    cfg.qubit.validate();
    cfg.bath.validate();
    for (const auto& axis : cfg.grid) {
        if (!is_grid_parameter(axis.name))
            throw UsageError("grid axis '" + axis.name + "' is not a qubit or bath parameter");
        if (axis.values.empty()) throw UsageError("grid axis '" + axis.name + "' has no values");
    }
    if (grid_size(cfg) > grid_budget)
        throw UsageError("grid expands to more than " + std::to_string(grid_budget) + " points");
    if (cfg.output.precision < 1 || cfg.output.precision > 17)
        throw UsageError("output precision must be in [1, 17]");
}

// Cartesian product in axis order, first axis slowest. Empty grid gives one point.
inline std::vector<RunConfig> expand_grid(const RunConfig& cfg,
                                          std::size_t grid_budget = default_grid_budget) {
    validate(cfg, grid_budget);
    std::vector<RunConfig> points{cfg};
    for (const auto& axis : cfg.grid) {
        std::vector<RunConfig> next;
        next.reserve(points.size() * axis.values.size());
        for (const auto& p : points)
            for (double v : axis.values) {
                RunConfig q = p;
                set_parameter(q, axis.name, v);
                next.push_back(std::move(q));
            }
        points = std::move(next);
    }
    for (auto& p : points) {
        p.grid.clear();
        p.qubit.validate();
        p.bath.validate();
    }
    return points;
}

inline std::string serialize(const RunConfig& cfg) {
    std::ostringstream os;
    os << "[qubit]\n"
       << "omega = " << format_exact(cfg.qubit.omega) << "\n"
       << "theta0 = " << format_exact(cfg.qubit.theta0) << "\n"
       << "[bath]\n"
       << "exponent = " << cfg.bath.exponent_n << "\n"
       << "gamma0 = " << format_exact(cfg.bath.gamma0) << "\n"
       << "cutoff = " << format_exact(cfg.bath.cutoff_lambda) << "\n"
       << "temperature = " << format_exact(cfg.bath.temperature) << "\n"
       << "[method]\n"
       << "kind = "
       << (cfg.method.kind == GammaMethod::Kind::ClosedForm ? "closed" : "quadrature") << "\n"
       << "regime = " << (cfg.method.regime ? to_string(*cfg.method.regime) : "auto") << "\n"
       << "abs_tol = " << format_exact(cfg.method.tol.abs_tol) << "\n"
       << "rel_tol = " << format_exact(cfg.method.tol.rel_tol) << "\n"
       << "high_t_threshold = " << format_exact(cfg.method.high_t_threshold) << "\n"
       << "[grid]\n";
    for (const auto& axis : cfg.grid) {
        os << axis.name << " =";
        for (std::size_t i = 0; i < axis.values.size(); ++i)
            os << (i == 0 ? " " : ", ") << format_exact(axis.values[i]);
        os << "\n";
    }
    os << "[output]\n"
       << "path = " << cfg.output.path << "\n"
       << "precision = " << cfg.output.precision << "\n";
    return os.str();
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline std::optional<Regime> parse_regime(std::string_view v) {
    if (v == "auto") return std::nullopt;
    if (v == "zero_t") return Regime::ZeroT;
    if (v == "high_t") return Regime::HighT;
    if (v == "general_t") return Regime::GeneralT;
    throw UsageError("unknown regime '" + std::string(v) + "'");
}

} // namespace detail

// Applies `key = value` lines on top of `base`.
inline RunConfig parse_config(std::string_view text, RunConfig base = {}) {
    RunConfig cfg = std::move(base);
    std::string section;
    bool grid_seen = false;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        line = detail::trim(line);
        if (line.empty() || line.front() == '#') continue;
        const std::string where = "config line " + std::to_string(line_no);
        if (line.front() == '[') {
            if (line.back() != ']') throw UsageError(where + ": malformed section header");
            section = std::string(detail::trim(line.substr(1, line.size() - 2)));
            if (section == "grid" && !grid_seen) {
                cfg.grid.clear();
                grid_seen = true;
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw UsageError(where + ": expected key = value");
        const std::string key(detail::trim(line.substr(0, eq)));
        const std::string_view value = detail::trim(line.substr(eq + 1));

        if (section == "qubit" || section == "bath") {
            const bool qubit_key = key == "omega" || key == "theta0";
            if ((section == "qubit") != qubit_key || !is_grid_parameter(key))
                throw UsageError(where + ": unknown key '" + key + "' in [" + section + "]");
            set_parameter(cfg, key, parse_double(value, key));
        } else if (section == "method") {
            if (key == "kind") {
                if (value == "closed") cfg.method.kind = GammaMethod::Kind::ClosedForm;
                else if (value == "quadrature") cfg.method.kind = GammaMethod::Kind::Quadrature;
                else throw UsageError(where + ": kind must be closed or quadrature");
            } else if (key == "regime") {
                cfg.method.regime = detail::parse_regime(value);
            } else if (key == "abs_tol") {
                cfg.method.tol.abs_tol = parse_double(value, key);
            } else if (key == "rel_tol") {
                cfg.method.tol.rel_tol = parse_double(value, key);
            } else if (key == "high_t_threshold") {
                cfg.method.high_t_threshold = parse_double(value, key);
            } else {
                throw UsageError(where + ": unknown key '" + key + "' in [method]");
            }
        } else if (section == "grid") {
            if (!is_grid_parameter(key))
                throw UsageError(where + ": grid axis '" + key + "' is not a qubit or bath parameter");
            GridAxis axis{key, {}};
            std::string_view rest = value;
            while (!rest.empty()) {
                const auto comma = rest.find(',');
                axis.values.push_back(parse_double(rest.substr(0, comma), key));
                rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
            }
            cfg.grid.push_back(std::move(axis));
        } else if (section == "output") {
            if (key == "path") cfg.output.path = std::string(value);
            else if (key == "precision") cfg.output.precision = static_cast<int>(parse_double(value, key));
            else throw UsageError(where + ": unknown key '" + key + "' in [output]");
        } else {
            throw UsageError(where + ": key outside a known section");
        }
    }
    return cfg;
}

inline RunConfig load_config(const std::string& path, RunConfig base = {}) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), std::move(base));
}

// Rows of numbers (or empty cells) with a `# `-prefixed comment block on top.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header, int precision = 12)
        : header_(std::move(header)), precision_(precision) {}

    void add_comment_block(std::string_view text) {
        while (!text.empty()) {
            const auto nl = text.find('\n');
            comments_.emplace_back(text.substr(0, nl));
            text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        }
    }

    // Cells may be numbers, empty optionals or short tokens.
    struct Cell {
        Cell(double v) : number(v) {}
        Cell(std::optional<double> v) : number(v) {}
        Cell(std::string_view s) : token(s) {}
        Cell(const char* s) : token(s) {}
        std::optional<double> number;
        std::string token;
    };

    void add_row(std::vector<Cell> cells) {
        if (cells.size() != header_.size())
            throw UsageError("CSV row has " + std::to_string(cells.size()) + " cells, header has " +
                             std::to_string(header_.size()));
        std::string line;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) line += ',';
            if (cells[i].number) line += format_number(*cells[i].number, precision_);
            else line += cells[i].token;
        }
        rows_.push_back(std::move(line));
    }

    std::string str() const {
        std::string out;
        for (const auto& c : comments_) out += "# " + c + "\n";
        for (std::size_t i = 0; i < header_.size(); ++i) out += (i ? "," : "") + header_[i];
        out += "\n";
        for (const auto& r : rows_) out += r + "\n";
        return out;
    }

private:
    std::vector<std::string> header_;
    int precision_;
    std::vector<std::string> comments_;
    std::vector<std::string> rows_;
};

} // namespace dephaser
