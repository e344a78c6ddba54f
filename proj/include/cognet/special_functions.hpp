#ifndef COGNET_SPECIAL_FUNCTIONS_HPP
#define COGNET_SPECIAL_FUNCTIONS_HPP

// Regularized incomplete gamma, generalized incomplete gamma and the Gauss
// hypergeometric function on the real line.

#include <cmath>
#include <limits>
#include <string>

#include "cognet/errors.hpp"

namespace cognet::special {

namespace detail {

inline constexpr double kEps = std::numeric_limits<double>::epsilon();
inline constexpr double kTiny = 1e-300;
inline constexpr int kMaxIterations = 100000;

// x^a e^{-x} / Gamma(a)
inline double gamma_prefactor(double a, double x)
{
    return std::exp(a * std::log(x) - x - std::lgamma(a));
}

// Series for P(a, x); good for x < a + 1.
inline double gamma_p_series(double a, double x)
{
    double term = 1.0 / a;
    double sum = term;
    for (int n = 1; n < kMaxIterations; ++n) {
        term *= x / (a + n);
        sum += term;
        if (std::abs(term) < std::abs(sum) * kEps)
            return sum * gamma_prefactor(a, x);
    }
    throw DomainError("gamma_p: series failed to converge for a=" + std::to_string(a) +
                      ", x=" + std::to_string(x));
}

// Modified Lentz continued fraction for Q(a, x); good for x >= a + 1.
inline double gamma_q_fraction(double a, double x)
{
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxIterations; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < kTiny)
            d = kTiny;
        c = b + an / c;
        if (std::abs(c) < kTiny)
            c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < kEps)
            return gamma_prefactor(a, x) * h;
    }
    throw DomainError("gamma_q: continued fraction failed to converge for a=" +
                      std::to_string(a) + ", x=" + std::to_string(x));
}

inline void check_gamma_args(double a, double x)
{
    if (!(a > 0.0) || !std::isfinite(a))
        throw DomainError("incomplete gamma: shape must be positive and finite");
    if (std::isnan(x) || x < 0.0)
        throw DomainError("incomplete gamma: argument must be non-negative");
}

} // namespace detail

/// Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a).
inline double gamma_p(double a, double x)
{
    detail::check_gamma_args(a, x);
    if (x == 0.0)
        return 0.0;
    if (std::isinf(x))
        return 1.0;
    if (x < a + 1.0)
        return detail::gamma_p_series(a, x);
    return 1.0 - detail::gamma_q_fraction(a, x);
}

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
inline double gamma_q(double a, double x)
{
    detail::check_gamma_args(a, x);
    if (x == 0.0)
        return 1.0;
    if (std::isinf(x))
        return 0.0;
    if (x < a + 1.0)
        return 1.0 - detail::gamma_p_series(a, x);
    return detail::gamma_q_fraction(a, x);
}

/// Non-regularized upper incomplete gamma Gamma(a, x) for x > 0.
/// Negative non-integer shapes use Gamma(a, x) = (Gamma(a+1, x) - x^a e^{-x}) / a.
inline double upper_gamma(double a, double x)
{
    if (a > 0.0)
        return std::tgamma(a) * gamma_q(a, x);
    if (!(x > 0.0))
        throw DomainError("upper_gamma: non-positive shape requires x > 0");
    if (a == std::floor(a))
        throw DomainError("upper_gamma: non-positive integer shape is not supported");
    return (upper_gamma(a + 1.0, x) - std::exp(a * std::log(x) - x)) / a;
}

/// Generalized incomplete gamma Gamma(a, x1, x2) = Gamma(a, x1) - Gamma(a, x2),
/// i.e. the integral of t^{a-1} e^{-t} over [x1, x2].
inline double generalized_incomplete_gamma(double a, double x1, double x2)
{
    if (x1 < 0.0 || x2 < 0.0)
        throw DomainError("generalized_incomplete_gamma: limits must be non-negative");
    if (a > 0.0) {
        // Difference the representation that is not close to 1 at both ends.
        if (x2 < a + 1.0 && x1 < a + 1.0)
            return std::tgamma(a) * (gamma_p(a, x2) - gamma_p(a, x1));
        return std::tgamma(a) * (gamma_q(a, x1) - gamma_q(a, x2));
    }
    return upper_gamma(a, x1) - upper_gamma(a, x2);
}

namespace detail {

// Direct hypergeometric series, |z| < 1 (or z = 1 with c - a - b > 0).
inline double hyp2f1_series(double a, double b, double c, double z)
{
    double term = 1.0;
    double sum = 1.0;
    for (int k = 0; k < 10 * kMaxIterations; ++k) {
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z;
        sum += term;
        if (term == 0.0)
            return sum;
        if (std::abs(term) < std::abs(sum) * 1e-17 && k > 4)
            return sum;
    }
    throw DomainError("hypergeometric_2f1: series failed to converge");
}

inline bool near_integer(double v)
{
    return std::abs(v - std::round(v)) < 1e-12;
}

// 1/Gamma(x), zero at the poles.
inline double reciprocal_gamma(double x)
{
    if (x <= 0.0 && near_integer(x))
        return 0.0;
    return 1.0 / std::tgamma(x);
}

} // namespace detail

/// Gauss hypergeometric function 2F1(a, b; c; z) for real z <= 1.
///
/// Negative z is mapped into (0, 1) with the Pfaff transformation, and
/// z in (1/2, 1) uses the z -> 1 - z connection formula when c - a - b is
/// not an integer. At z = 1 Gauss's summation theorem is used.
inline double hypergeometric_2f1(double a, double b, double c, double z)
{
    if (c <= 0.0 && detail::near_integer(c))
        throw DomainError("hypergeometric_2f1: c must not be a non-positive integer");
    if (z > 1.0)
        throw DomainError("hypergeometric_2f1: z > 1 is outside the real domain");
    if (z == 0.0)
        return 1.0;
    if (z == 1.0) {
        if (!(c - a - b > 0.0))
            throw DomainError("hypergeometric_2f1: divergent at z = 1");
        return std::tgamma(c) * std::tgamma(c - a - b) * detail::reciprocal_gamma(c - a) *
               detail::reciprocal_gamma(c - b);
    }
    if (z < 0.0) {
        // 2F1(a,b;c;z) = (1-z)^{-b} 2F1(c-a, b; c; z/(z-1))
        const double w = z / (z - 1.0);
        return std::pow(1.0 - z, -b) * hypergeometric_2f1(c - a, b, c, w);
    }
    const double s = c - a - b;
    if (z > 0.5 && !detail::near_integer(s)) {
        const double w = 1.0 - z;
        const double first = std::tgamma(c) * std::tgamma(s) *
                             detail::reciprocal_gamma(c - a) * detail::reciprocal_gamma(c - b) *
                             detail::hyp2f1_series(a, b, 1.0 - s, w);
        const double second = std::tgamma(c) * std::tgamma(-s) *
                              detail::reciprocal_gamma(a) * detail::reciprocal_gamma(b) *
                              std::pow(w, s) *
                              detail::hyp2f1_series(c - a, c - b, 1.0 + s, w);
        return first + second;
    }
    return detail::hyp2f1_series(a, b, c, z);
}

} // namespace cognet::special

#endif // COGNET_SPECIAL_FUNCTIONS_HPP
