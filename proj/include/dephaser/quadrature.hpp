// quadrature.hpp: globally adaptive Gauss-Kronrod (G10/K21) integration
//
// The integration range is first cut at caller-supplied breakpoints (for
// oscillatory integrands: one panel per half period), each panel gets a K21
// estimate, and the panel with the largest error estimate is bisected until
// the total error estimate meets max(abs_tol, rel_tol * |I|).

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "dephaser/errors.hpp"

namespace dephaser::quad {

struct Tolerances {
    double abs_tol{1e-10};
    double rel_tol{1e-8};
    std::size_t max_panels{1'000'000};     // initial breakpoint panels
    std::size_t max_subdivisions{200'000}; // bisections on top of the panels

    bool operator==(const Tolerances&) const = default;
};

struct Result {
    double value{0.0};
    double error{0.0};
    std::size_t evaluations{0};
    bool converged{true};
};

namespace detail {

// Abscissae/weights from QUADPACK qk21.
inline constexpr std::array<double, 11> xgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
inline constexpr std::array<double, 11> wgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208626368878, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
inline constexpr std::array<double, 5> wg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
Panel kronrod21(F& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double kron = fc * wgk[10];
    double gauss = 0.0;
    for (std::size_t j = 0; j < 10; ++j) {
        const double dx = half * xgk[j];
        const double s = f(center - dx) + f(center + dx);
        kron += wgk[j] * s;
        if (j % 2 == 1) gauss += wg[j / 2] * s;
    }
    kron *= half;
    gauss *= half;
    return {a, b, kron, std::abs(kron - gauss)};
}

} // namespace detail

// Integrate f over [breaks.front(), breaks.back()] with panels at the given breakpoints.
template <class F>
Result integrate(F&& f, std::span<const double> breaks, const Tolerances& tol) {
    if (breaks.size() < 2) return {};
    if (breaks.size() - 1 > tol.max_panels)
        throw ResourceError("quadrature panel budget exceeded: " +
                            std::to_string(breaks.size() - 1) + " > " +
                            std::to_string(tol.max_panels));
    std::vector<detail::Panel> heap;
    heap.reserve(breaks.size() - 1 + 64);
    Result out;
    double total = 0.0, err = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        if (!(breaks[i + 1] > breaks[i])) continue;
        heap.push_back(detail::kronrod21(f, breaks[i], breaks[i + 1]));
        total += heap.back().value;
        err += heap.back().error;
        out.evaluations += 21;
    }
    std::make_heap(heap.begin(), heap.end());

    auto target = [&] { return std::max(tol.abs_tol, tol.rel_tol * std::abs(total)); };
    std::size_t splits = 0;
    while (err > target() && !heap.empty()) {
        if (splits >= tol.max_subdivisions) {
            out.converged = false;
            break;
        }
        std::pop_heap(heap.begin(), heap.end());
        const detail::Panel worst = heap.back();
        heap.pop_back();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) { // interval exhausted at machine precision
            out.converged = false;
            break;
        }
        const auto left = detail::kronrod21(f, worst.a, mid);
        const auto right = detail::kronrod21(f, mid, worst.b);
        out.evaluations += 42;
        total += left.value + right.value - worst.value;
        err += left.error + right.error - worst.error;
        heap.push_back(left);
        std::push_heap(heap.begin(), heap.end());
        heap.push_back(right);
        std::push_heap(heap.begin(), heap.end());
        ++splits;
    }
    // Re-sum to shed drift from the incremental updates.
    total = 0.0;
    err = 0.0;
    for (const auto& p : heap) {
        total += p.value;
        err += p.error;
    }
    out.value = total;
    out.error = err;
    if (out.converged && err > target()) out.converged = false;
    return out;
}

template <class F>
Result integrate(F&& f, double a, double b, const Tolerances& tol) {
    const std::array<double, 2> br{a, b};
    return integrate(std::forward<F>(f), std::span<const double>(br), tol);
}

// Same as integrate() but throws NumericalError on non-convergence.
template <class F>
Result integrate_or_throw(F&& f, std::span<const double> breaks, const Tolerances& tol,
                          const char* what) {
    auto r = integrate(std::forward<F>(f), breaks, tol);
    if (!r.converged)
        throw NumericalError(std::string(what) + ": quadrature did not converge, error estimate " +
                                 std::to_string(r.error),
                             r.error);
    return r;
}

} // namespace dephaser::quad
