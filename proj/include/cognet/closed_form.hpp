#ifndef COGNET_CLOSED_FORM_HPP
#define COGNET_CLOSED_FORM_HPP

// Closed forms for a regular L-gon (or disk, L = 0) centred on the PU-Rx.
// They exist to cross-check the general quadrature pipeline.
//
// Two transcription fixes relative to the published forms: the arccos
// integral of the MGF is divided by |A'| like every other term, and Phi
// enters the guard-zone moment with the opposite sign. Both are needed for
// the expressions to integrate the stated density.

#include <cmath>
#include <numbers>
#include <string>

#include "cognet/errors.hpp"
#include "cognet/fading.hpp"
#include "cognet/quadrature.hpp"
#include "cognet/special_functions.hpp"

namespace cognet {

struct RegularPolygonParams
{
    int sides = 0;         ///< L; 0 means a disk (L -> infinity)
    double circumradius = 0.0; ///< W
    double epsilon = 1.0;
    double alpha = 2.5;
    double p_t = 1.0;
    double p_ts = 1.0;
    double mg = 3.0;
    double mh = 3.0;
    double r_f = 1.0;      ///< guard radius (guard-zone forms)
    double gamma = 0.0;    ///< activation threshold (threshold form)
    double s = 0.0;        ///< MGF argument
    int n = 1;             ///< moment order

    [[nodiscard]] bool is_disk() const noexcept { return sides == 0; }

    [[nodiscard]] double inradius() const
    {
        return is_disk() ? circumradius : circumradius * std::cos(std::numbers::pi / sides);
    }

    [[nodiscard]] double area_prime() const
    {
        const double outer = is_disk() ? std::numbers::pi * circumradius * circumradius
                                       : 0.5 * sides * circumradius * circumradius *
                                             std::sin(2.0 * std::numbers::pi / sides);
        return outer - std::numbers::pi * epsilon * epsilon;
    }
};

enum class ClosedFormKind { mgf_guard, moment_guard, moment_threshold };

namespace detail {

inline void check_regular(const RegularPolygonParams& p)
{
    if (p.sides != 0 && p.sides < 3)
        throw DomainError("closed form: need at least 3 sides (or 0 for a disk)");
    if (!(p.circumradius > 0.0) || !(p.epsilon > 0.0) || !(p.epsilon < p.inradius()))
        throw DomainError("closed form: need 0 < epsilon < W_p");
    if (!(p.alpha > 0.0) || !(p.p_t > 0.0) || !(p.mg >= 0.5))
        throw DomainError("closed form: alpha, p_t must be positive and mg >= 0.5");
}

inline void check_guard(const RegularPolygonParams& p)
{
    if (!(p.r_f >= p.epsilon) || !(p.r_f < p.inradius()))
        throw DomainError("closed form: guard radius must satisfy epsilon <= r_f < W_p");
}

inline void check_moment_order(const RegularPolygonParams& p)
{
    if (p.n < 1)
        throw DomainError("closed form: moment order must be at least 1");
    const double na = p.n * p.alpha;
    if (std::abs(na - 1.0) < 1e-12 || std::abs(na - 2.0) < 1e-12)
        throw DomainError("closed form: n * alpha must differ from 1 and 2");
}

// Antiderivative: phi(r) - phi(W_p) = (2 - n alpha) * integral of
// u^{1-n alpha} arccos(W_p / u) over [W_p, r].
inline double phi(double r, double wp, double na)
{
    const double z = (wp * wp) / (r * r);
    const double acos_term = r >= wp ? std::acos(std::min(1.0, wp / r)) : 0.0;
    const double num = (1.0 - na) * ((1.0 + na) * r * r * r * acos_term +
                                     wp * wp * wp *
                                         special::hypergeometric_2f1(0.5, (na + 1.0) / 2.0, (na + 3.0) / 2.0, z)) -
                       wp * (1.0 + na) * r * r *
                           special::hypergeometric_2f1(-0.5, (na - 1.0) / 2.0, (na + 1.0) / 2.0, z);
    return -num / ((na - 1.0) * (na + 1.0) * std::pow(r, 1.0 + na));
}

} // namespace detail

/// M_I(s) under a guard zone r_f (r_f = epsilon: full activity).
inline double mgf_guard_regular(const RegularPolygonParams& p)
{
    detail::check_regular(p);
    detail::check_guard(p);
    if (!(p.s >= 0.0))
        throw DomainError("closed form: s must be non-negative");
    if (std::abs(p.alpha - 2.0) < 1e-12)
        throw DomainError("closed form: the MGF form needs alpha != 2");
    const double W = p.circumradius;
    const double m = p.mg;
    const double a2 = -2.0 / p.alpha;
    const double c = 1.0 + a2;
    auto term = [&](double r) {
        return r * r * special::hypergeometric_2f1(m, a2, c, -std::pow(r, -p.alpha) * p.s * p.p_t / m);
    };
    const double ap = p.area_prime();
    double value = std::numbers::pi * (term(W) - term(p.r_f) + p.r_f * p.r_f - p.epsilon * p.epsilon) / ap;
    if (!p.is_disk()) {
        const double wp = p.inradius();
        const double L = p.sides;
        const QuadratureOptions opts{0.0, 1e-13, 4000};
        const double cut = integrate(
                               [&](double r) {
                                   return 2.0 * L * r * std::pow(m / (m + std::pow(r, -p.alpha) * p.s * p.p_t), m) *
                                          std::acos(std::min(1.0, wp / r));
                               },
                               wp, W, {}, opts)
                               .value;
        value -= cut / ap;
    }
    return value;
}

/// mu_I(n) under a guard zone r_f < W_p.
inline double moment_guard_regular(const RegularPolygonParams& p)
{
    detail::check_regular(p);
    detail::check_guard(p);
    detail::check_moment_order(p);
    const double na = p.n * p.alpha;
    const double W = p.circumradius;
    const NakagamiPower g(p.mg);
    double bracket = std::numbers::pi * (std::pow(W, 2.0 - na) - std::pow(p.r_f, 2.0 - na));
    if (!p.is_disk()) {
        const double wp = p.inradius();
        bracket += -p.sides * detail::phi(W, wp, na) + p.sides * detail::phi(wp, wp, na);
    }
    return std::pow(p.p_t, p.n) * g.power_moment(p.n) * 2.0 * bracket / (p.area_prime() * (2.0 - na));
}

/// mu_I(n) under the threshold protocol.
inline double moment_threshold_regular(const RegularPolygonParams& p)
{
    detail::check_regular(p);
    detail::check_moment_order(p);
    if (!(p.gamma > 0.0) || !(p.p_ts > 0.0) || !(p.mh >= 0.5))
        throw DomainError("closed form: gamma and p_ts must be positive and mh >= 0.5");
    const double na = p.n * p.alpha;
    const double W = p.circumradius;
    const double eps = p.epsilon;
    const double mh = p.mh;
    const double k = mh * p.gamma / p.p_ts;
    const NakagamiPower g(p.mg);
    const double gm = std::tgamma(mh);

    double bracket = std::pow(W, 2.0 - na) * special::gamma_p(mh, k * std::pow(W, p.alpha)) -
                     std::pow(eps, 2.0 - na) * special::gamma_p(mh, k * std::pow(eps, p.alpha)) -
                     std::pow(k, p.n - 2.0 / p.alpha) *
                         special::generalized_incomplete_gamma(mh - p.n + 2.0 / p.alpha, k * std::pow(eps, p.alpha),
                                                               k * std::pow(W, p.alpha)) /
                         gm;
    if (!p.is_disk()) {
        const double wp = p.inradius();
        const QuadratureOptions opts{0.0, 1e-13, 4000};
        const double cut = integrate(
                               [&](double r) {
                                   return special::gamma_p(mh, k * std::pow(r, p.alpha)) * std::pow(r, 1.0 - na) *
                                          std::acos(std::min(1.0, wp / r));
                               },
                               wp, W, {}, opts)
                               .value;
        bracket -= p.sides * (2.0 - na) / std::numbers::pi * cut;
    }
    return std::pow(p.p_t, p.n) * g.power_moment(p.n) * 2.0 * std::numbers::pi * bracket /
           (p.area_prime() * (2.0 - na));
}

inline double closed_form_regular_polygon(ClosedFormKind kind, const RegularPolygonParams& p)
{
    switch (kind) {
    case ClosedFormKind::mgf_guard:
        return mgf_guard_regular(p);
    case ClosedFormKind::moment_guard:
        return moment_guard_regular(p);
    case ClosedFormKind::moment_threshold:
        return moment_threshold_regular(p);
    }
    throw DomainError("closed form: unknown kind");
}

} // namespace cognet

#endif // COGNET_CLOSED_FORM_HPP
