#ifndef COGNET_NETWORK_METRICS_HPP
#define COGNET_NETWORK_METRICS_HPP

// Network-level quantities for M i.i.d. interferers: aggregate MGF,
// cumulants, spatially averaged outage and the mean active SU count.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "cognet/errors.hpp"
#include "cognet/fading.hpp"
#include "cognet/model.hpp"
#include "cognet/protocol_kernel.hpp"

namespace cognet {

inline constexpr int kMaxCumulantOrder = 6;

/// M_I(s)^M.
inline double aggregate_mgf(const InterferenceKernel& kernel, double s)
{
    return std::pow(kernel.single_mgf(s), kernel.scenario().m_sus());
}

struct CumulantSet
{
    int m_sus = 0;
    std::vector<double> single_moments;  ///< mu_I(1..n), index 0 is order 1
    std::vector<double> single;          ///< kappa_I(1..n)
    std::vector<double> values;          ///< kappa_agg(1..n) = M kappa_I

    [[nodiscard]] int order() const noexcept { return static_cast<int>(values.size()); }
    [[nodiscard]] double operator()(int n) const { return values.at(static_cast<std::size_t>(n - 1)); }
};

/// Cumulants from raw moments mu(1..n) by the moment-cumulant recursion.
inline std::vector<double> cumulants_from_moments(const std::vector<double>& mu)
{
    const int n_max = static_cast<int>(mu.size());
    std::vector<double> k(mu.size());
    for (int n = 1; n <= n_max; ++n) {
        double v = mu[n - 1];
        for (int j = 1; j < n; ++j)
            v -= std::tgamma(n) / (std::tgamma(j) * std::tgamma(n - j + 1)) * k[j - 1] * mu[n - j - 1];
        k[n - 1] = v;
    }
    return k;
}

/// Raw moments from cumulants (inverse of the recursion above).
inline std::vector<double> moments_from_cumulants(const std::vector<double>& kappa)
{
    const int n_max = static_cast<int>(kappa.size());
    std::vector<double> mu(kappa.size());
    for (int n = 1; n <= n_max; ++n) {
        double v = kappa[n - 1];
        for (int j = 1; j < n; ++j)
            v += std::tgamma(n) / (std::tgamma(j) * std::tgamma(n - j + 1)) * kappa[j - 1] * mu[n - j - 1];
        mu[n - 1] = v;
    }
    return mu;
}

inline CumulantSet cumulants(const InterferenceKernel& kernel, int n_max)
{
    if (n_max < 1 || n_max > kMaxCumulantOrder)
        throw DomainError("cumulants: order must lie in [1, " + std::to_string(kMaxCumulantOrder) + "]");
    CumulantSet set;
    set.m_sus = kernel.scenario().m_sus();
    for (int n = 1; n <= n_max; ++n)
        set.single_moments.push_back(kernel.single_moment(n));
    set.single = cumulants_from_moments(set.single_moments);
    for (double k : set.single)
        set.values.push_back(set.m_sus * k);
    return set;
}

/// E[I_agg^n] for n = 1..order of the set.
inline std::vector<double> aggregate_moments(const CumulantSet& set)
{
    return moments_from_cumulants(set.values);
}

/// Outage with no interference: 1 - exp(-m0 beta/rho0) sum_k (m0 beta/rho0)^k / k!.
inline double noise_only_outage(const ValidatedScenario& vs)
{
    const auto& s = vs.scenario();
    return NakagamiPower(vs.m0()).power_cdf(s.beta / s.rho0);
}

/// Coefficients b_0..b_{n-1} of Q(x)^M, Q(x) = sum q_t x^t (J.C.P. Miller recurrence).
inline std::vector<double> power_series_power(const std::vector<double>& q, int m)
{
    const std::size_t n = q.size();
    std::vector<double> b(n, 0.0);
    if (n == 0)
        return b;
    if (!(q[0] > 0.0))
        throw DomainError("power_series_power: constant term must be positive");
    b[0] = std::pow(q[0], m);
    for (std::size_t k = 1; k < n; ++k) {
        double acc = 0.0;
        for (std::size_t i = 1; i <= k; ++i)
            acc += (static_cast<double>(i) * m - static_cast<double>(k) + static_cast<double>(i)) * q[i] * b[k - i];
        b[k] = acc / (static_cast<double>(k) * q[0]);
    }
    return b;
}

/// Outage probability given a_t(s*) for t = 0..m0-1, s* = m0 beta r0^alpha / P_T0.
inline double outage_from_weighted_moments(const ValidatedScenario& vs, const std::vector<double>& a)
{
    const auto& sc = vs.scenario();
    const int m0 = vs.m0();
    if (static_cast<int>(a.size()) < m0)
        throw DomainError("outage: need weighted moments a_0..a_{m0-1}");
    std::vector<double> q(static_cast<std::size_t>(m0));
    double fact = 1.0;
    for (int t = 0; t < m0; ++t) {
        if (t > 0)
            fact *= t;
        q[t] = a[t] / fact;
    }
    const auto b = power_series_power(q, vs.m_sus());

    const double noise = sc.beta / sc.rho0;
    const double scale = sc.beta * std::pow(sc.r0, sc.alpha) / sc.p_t0;
    double total = 0.0;
    double m0_pow_over_fact = 1.0; // m0^k / k!
    for (int k = 0; k < m0; ++k) {
        if (k > 0)
            m0_pow_over_fact *= static_cast<double>(m0) / k;
        double inner = 0.0;
        double binom = 1.0;   // C(k, j)
        double j_fact = 1.0;  // j!
        for (int j = 0; j <= k; ++j) {
            if (j > 0) {
                binom *= static_cast<double>(k - j + 1) / j;
                j_fact *= j;
            }
            inner += binom * std::pow(noise, k - j) * std::pow(scale, j) * j_fact * b[j];
        }
        total += m0_pow_over_fact * inner;
    }
    const double p = 1.0 - std::exp(-m0 * noise) * total;
    return std::clamp(p, 0.0, 1.0);
}

/// s* = m0 beta r0^alpha / P_T0.
inline double outage_laplace_point(const ValidatedScenario& vs)
{
    const auto& s = vs.scenario();
    return vs.m0() * s.beta * std::pow(s.r0, s.alpha) / s.p_t0;
}

inline std::vector<double> outage_weighted_moments(const InterferenceKernel& kernel)
{
    const auto& vs = kernel.scenario();
    const double s_star = outage_laplace_point(vs);
    std::vector<double> a;
    for (int t = 0; t < vs.m0(); ++t)
        a.push_back(kernel.single_weighted_moment(t, s_star));
    return a;
}

/// Spatially averaged outage probability at the PU-Rx.
inline double outage_probability(const InterferenceKernel& kernel)
{
    return outage_from_weighted_moments(kernel.scenario(), outage_weighted_moments(kernel));
}

/// Expected number of active SUs, M mu_I(0).
inline double mean_active(const InterferenceKernel& kernel)
{
    return kernel.scenario().m_sus() * kernel.single_moment(0);
}

} // namespace cognet

#endif // COGNET_NETWORK_METRICS_HPP
