#ifndef COGNET_FADING_HPP
#define COGNET_FADING_HPP

// Unit-mean Gamma power gain (Nakagami-m amplitude): shape m, rate m.

#include <cmath>
#include <random>
#include <string>

#include "cognet/errors.hpp"
#include "cognet/special_functions.hpp"

namespace cognet {

struct NakagamiPower
{
    double m = 1.0;

    explicit NakagamiPower(double shape) : m(shape)
    {
        if (!(shape >= 0.5) || !std::isfinite(shape))
            throw ValidationError("fading: Nakagami shape must be at least 0.5, got " + std::to_string(shape));
    }

    /// E[G^n] = Gamma(m + n) / (m^n Gamma(m)).
    [[nodiscard]] double power_moment(double n) const
    {
        if (!(n >= 0.0))
            throw DomainError("power_moment: order must be non-negative");
        if (n == 0.0)
            return 1.0;
        return std::exp(std::lgamma(m + n) - std::lgamma(m) - n * std::log(m));
    }

    /// P(G <= x) = P(m, m x).
    [[nodiscard]] double power_cdf(double x) const
    {
        if (std::isnan(x))
            throw DomainError("power_cdf: NaN argument");
        if (x <= 0.0)
            return 0.0;
        return special::gamma_p(m, m * x);
    }

    /// E[G^t exp(-theta G)] = m^m Gamma(m + t) / (Gamma(m) (m + theta)^(m + t)).
    [[nodiscard]] double laplace_weighted_moment(int t, double theta) const
    {
        if (t < 0)
            throw DomainError("laplace_weighted_moment: order must be non-negative");
        if (!(theta >= 0.0))
            throw DomainError("laplace_weighted_moment: theta must be non-negative");
        if (t == 0)
            return std::exp(-m * std::log1p(theta / m));
        return std::exp(std::lgamma(m + t) - std::lgamma(m) - t * std::log(m) -
                        (m + t) * std::log1p(theta / m));
    }

    /// 1 - E[exp(-theta G)], accurate for small theta.
    [[nodiscard]] double one_minus_mgf(double theta) const
    {
        return -std::expm1(-m * std::log1p(theta / m));
    }

    template <class Rng>
    double sample_power(Rng& rng) const
    {
        std::gamma_distribution<double> dist(m, 1.0 / m);
        return dist(rng);
    }
};

} // namespace cognet

#endif // COGNET_FADING_HPP
