#ifndef COGNET_QUADRATURE_HPP
#define COGNET_QUADRATURE_HPP

// Globally adaptive Gauss-Kronrod (G10/K21) quadrature on a finite interval,
// pre-split at caller-supplied breakpoints.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include "cognet/errors.hpp"

namespace cognet {

struct QuadratureOptions
{
    double abs_tol = 1e-12;
    double rel_tol = 1e-9;
    std::size_t max_intervals = 4000;
};

struct QuadratureResult
{
    double value = 0.0;
    double abs_error = 0.0;
    std::size_t intervals = 0;
    std::size_t evaluations = 0;
};

namespace detail {

// Abscissae of the 21-point Kronrod rule; odd indices are the 10-point Gauss nodes.
inline constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};

inline constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

inline constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

struct Segment
{
    double a;
    double b;
    double value;
    double error;

    bool operator<(const Segment& other) const { return error < other.error; }
};

// One K21 panel with the QUADPACK error heuristic.
template <class F>
Segment gauss_kronrod_21(F& f, double a, double b)
{
    constexpr double eps = std::numeric_limits<double>::epsilon();
    constexpr double uflow = std::numeric_limits<double>::min();

    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double abs_half = std::abs(half);

    const double fc = f(center);
    double result_gauss = 0.0;
    double result_kronrod = fc * kWgk[10];
    double result_abs = std::abs(result_kronrod);

    std::array<double, 10> fv1{};
    std::array<double, 10> fv2{};
    for (std::size_t j = 0; j < 10; ++j) {
        const double dx = half * kXgk[j];
        const double f1 = f(center - dx);
        const double f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        result_kronrod += kWgk[j] * (f1 + f2);
        result_abs += kWgk[j] * (std::abs(f1) + std::abs(f2));
        if (j % 2 == 1)
            result_gauss += kWg[j / 2] * (f1 + f2);
    }

    const double mean = 0.5 * result_kronrod;
    double result_asc = kWgk[10] * std::abs(fc - mean);
    for (std::size_t j = 0; j < 10; ++j)
        result_asc += kWgk[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));

    const double value = result_kronrod * half;
    result_abs *= abs_half;
    result_asc *= abs_half;
    double error = std::abs((result_kronrod - result_gauss) * half);
    if (result_asc != 0.0 && error != 0.0)
        error = result_asc * std::min(1.0, std::pow(200.0 * error / result_asc, 1.5));
    if (result_abs > uflow / (50.0 * eps))
        error = std::max(50.0 * eps * result_abs, error);
    return {a, b, value, error};
}

} // namespace detail

/// Integrates f over [a, b]. Each breakpoint strictly inside (a, b) starts a
/// new panel, so integrands with kinks or jumps there are handled exactly.
/// Converged when the summed error estimate is at most
/// max(abs_tol, rel_tol * |value|); throws QuadratureError otherwise.
template <class F>
QuadratureResult integrate(F&& f, double a, double b, std::span<const double> breakpoints = {},
                           const QuadratureOptions& options = {})
{
    if (!(std::isfinite(a) && std::isfinite(b)))
        throw DomainError("integrate: limits must be finite");
    if (a == b)
        return {};
    if (a > b) {
        auto r = integrate(f, b, a, breakpoints, options);
        r.value = -r.value;
        return r;
    }

    std::vector<double> cuts{a};
    for (double p : breakpoints)
        if (p > a && p < b)
            cuts.push_back(p);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::priority_queue<detail::Segment> heap;
    double total = 0.0;
    double total_error = 0.0;
    std::size_t evaluations = 0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        auto seg = detail::gauss_kronrod_21(f, cuts[i], cuts[i + 1]);
        evaluations += 21;
        total += seg.value;
        total_error += seg.error;
        heap.push(seg);
    }

    auto tolerance = [&] { return std::max(options.abs_tol, options.rel_tol * std::abs(total)); };

    while (total_error > tolerance()) {
        if (heap.size() >= options.max_intervals) {
            throw QuadratureError("integrate: tolerance not reached on [" + std::to_string(a) + ", " +
                                      std::to_string(b) + "] after " +
                                      std::to_string(heap.size()) + " subintervals (error " +
                                      std::to_string(total_error) + ")",
                                  total_error, tolerance());
        }
        const auto worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            throw QuadratureError("integrate: subinterval collapsed to machine precision",
                                  total_error, tolerance());
        }
        heap.pop();
        const auto left = detail::gauss_kronrod_21(f, worst.a, mid);
        const auto right = detail::gauss_kronrod_21(f, mid, worst.b);
        evaluations += 42;
        total += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }

    // Re-sum to shed drift from the running updates.
    double value = 0.0;
    double error = 0.0;
    const std::size_t intervals = heap.size();
    while (!heap.empty()) {
        value += heap.top().value;
        error += heap.top().error;
        heap.pop();
    }
    return {value, error, intervals, evaluations};
}

template <class F>
QuadratureResult integrate(F&& f, double a, double b, std::initializer_list<double> breakpoints,
                           const QuadratureOptions& options = {})
{
    return integrate(std::forward<F>(f), a, b,
                     std::span<const double>(breakpoints.begin(), breakpoints.size()), options);
}

} // namespace cognet

#endif // COGNET_QUADRATURE_HPP
