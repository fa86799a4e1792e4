// interpolation.hpp: adaptive piecewise Chebyshev interpolation of a scalar function
//
// Each piece holds samples at Chebyshev points of the second kind and is
// evaluated with the barycentric formula. A piece is accepted when the
// interpolant matches f at the interleaved check points to within abs_tol;
// otherwise it is bisected.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "dephaser/errors.hpp"

namespace dephaser {

class ChebyshevInterpolant {
public:
    struct Options {
        double abs_tol{1e-11};
        std::size_t degree{16};
        std::size_t max_pieces{4096};
        double min_width{1e-12};
    };

    ChebyshevInterpolant() = default;

    template <class F>
    static ChebyshevInterpolant build(F&& f, double a, double b, const Options& opt) {
        if (!(b > a)) throw UsageError("ChebyshevInterpolant: empty interval");
        if (opt.degree < 2) throw UsageError("ChebyshevInterpolant: degree must be >= 2");
        ChebyshevInterpolant out;
        out.degree_ = opt.degree;
        // Depth-first, left to right, so pieces come out sorted.
        std::vector<std::pair<double, double>> stack{{a, b}};
        while (!stack.empty()) {
            const auto [lo, hi] = stack.back();
            stack.pop_back();
            Piece p = out.sample(f, lo, hi);
            const bool tiny = (hi - lo) <= opt.min_width;
            if (tiny || out.piece_error(f, p) <= opt.abs_tol) {
                if (!tiny) {
                    out.max_error_ = std::max(out.max_error_, out.piece_error_cache_);
                }
                out.pieces_.push_back(std::move(p));
                if (out.pieces_.size() > opt.max_pieces)
                    throw ResourceError("ChebyshevInterpolant: piece budget exceeded (" +
                                        std::to_string(opt.max_pieces) + ")");
                continue;
            }
            const double mid = 0.5 * (lo + hi);
            stack.push_back({mid, hi});
            stack.push_back({lo, mid});
        }
        return out;
    }

    double operator()(double x) const {
        if (pieces_.empty()) throw UsageError("ChebyshevInterpolant: not built");
        auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                                   [](double v, const Piece& p) { return v < p.b; });
        if (it == pieces_.end()) it = std::prev(pieces_.end());
        return eval(*it, x);
    }

    double lower() const { return pieces_.front().a; }
    double upper() const { return pieces_.back().b; }
    std::size_t pieces() const { return pieces_.size(); }
    std::size_t evaluations() const { return evaluations_; }
    // Largest check-point mismatch among accepted pieces.
    double max_error() const { return max_error_; }

private:
    struct Piece {
        double a{0.0}, b{0.0};
        std::vector<double> values; // at Chebyshev points, x_j = mid + half*cos(j pi / degree)
    };

    std::vector<Piece> pieces_;
    std::size_t degree_{16};
    std::size_t evaluations_{0};
    double max_error_{0.0};
    double piece_error_cache_{0.0};

    double node(const Piece& p, double angle) const {
        return 0.5 * (p.a + p.b) + 0.5 * (p.b - p.a) * std::cos(angle);
    }

    template <class F>
    Piece sample(F& f, double a, double b) {
        Piece p{a, b, {}};
        p.values.resize(degree_ + 1);
        for (std::size_t j = 0; j <= degree_; ++j)
            p.values[j] = f(node(p, std::numbers::pi * static_cast<double>(j) /
                                        static_cast<double>(degree_)));
        evaluations_ += degree_ + 1;
        return p;
    }

    template <class F>
    double piece_error(F& f, const Piece& p) {
        double worst = 0.0;
        for (std::size_t j = 0; j < degree_; ++j) {
            const double x = node(p, std::numbers::pi * (static_cast<double>(j) + 0.5) /
                                         static_cast<double>(degree_));
            worst = std::max(worst, std::abs(f(x) - eval(p, x)));
        }
        evaluations_ += degree_;
        piece_error_cache_ = worst;
        return worst;
    }

    double eval(const Piece& p, double x) const {
        const std::size_t n = degree_;
        double num = 0.0, den = 0.0;
        for (std::size_t j = 0; j <= n; ++j) {
            const double xj = node(p, std::numbers::pi * static_cast<double>(j) /
                                          static_cast<double>(n));
            const double diff = x - xj;
            if (diff == 0.0) return p.values[j];
            double w = (j % 2 == 0) ? 1.0 : -1.0;
            if (j == 0 || j == n) w *= 0.5;
            num += w / diff * p.values[j];
            den += w / diff;
        }
        return num / den;
    }
};

} // namespace dephaser
