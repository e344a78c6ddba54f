#ifndef COGNET_PROTOCOL_KERNEL_HPP
#define COGNET_PROTOCOL_KERNEL_HPP

// Statistics of the interference I = P_T G R^-alpha * 1{active} caused by
// one uniformly placed SU. The fading integral is closed analytically so
// every quantity is a single quadrature over r.

#include <cmath>
#include <memory>
#include <numbers>
#include <string>
#include <variant>
#include <vector>

#include "cognet/errors.hpp"
#include "cognet/fading.hpp"
#include "cognet/geometry.hpp"
#include "cognet/model.hpp"
#include "cognet/quadrature.hpp"

namespace cognet {

class InterferenceKernel
{
public:
    InterferenceKernel(const ValidatedScenario& scenario, Protocol protocol,
                       std::shared_ptr<const DistanceProfile> profile = nullptr,
                       QuadratureOptions options = {})
        : scenario_(scenario), protocol_(std::move(protocol)), profile_(std::move(profile)),
          options_(options), g_(scenario.scenario().mg), h_(scenario.scenario().mh)
    {
        validate_protocol(scenario_, protocol_);
        if (!profile_)
            profile_ = std::make_shared<const DistanceProfile>(scenario_.region());
        const auto& s = scenario_.scenario();
        alpha_ = s.alpha;
        p_t_ = s.p_t;
        sense_scale_ = s.p_ts;
        lower_ = scenario_.region().epsilon;

        // FullActivity is evaluated as a guard zone of radius epsilon.
        if (std::holds_alternative<FullActivity>(protocol_)) {
            guard_ = true;
            r_f_ = lower_;
        } else if (const auto* g = std::get_if<GuardZone>(&protocol_)) {
            guard_ = true;
            r_f_ = g->r_f;
            lower_ = std::min(g->r_f, profile_->r_max());
        } else if (const auto* t = std::get_if<Threshold>(&protocol_)) {
            gamma_ = t->gamma;
        } else {
            const auto& c = std::get<Cooperation>(protocol_);
            gamma_ = c.gamma;
            coop_ = true;
            const double disk = std::numbers::pi * c.r_c * c.r_c;
            coop_outside_ = (scenario_.area_prime() - disk) / scenario_.area_prime();
            coop_inside_ = disk / scenario_.area_prime();
            coop_exponent_ = scenario_.m_sus() - 1;
        }

        const auto bp = profile_->breakpoints();
        breakpoints_.assign(bp.begin(), bp.end());
        if (guard_)
            breakpoints_.push_back(r_f_);

        moment_options_ = options_;
        moment_options_.abs_tol = 0.0;
    }

    [[nodiscard]] const ValidatedScenario& scenario() const noexcept { return scenario_; }
    [[nodiscard]] const Protocol& protocol() const noexcept { return protocol_; }
    [[nodiscard]] const DistanceProfile& profile() const noexcept { return *profile_; }
    [[nodiscard]] std::shared_ptr<const DistanceProfile> shared_profile() const noexcept { return profile_; }

    /// Probability that an SU at distance r from the PU-Rx transmits.
    [[nodiscard]] double activity_probability(double r) const
    {
        const double tol = 1e-9 * std::max(1.0, profile_->r_max());
        if (!(r >= profile_->epsilon() - tol && r <= profile_->r_max() + tol))
            throw DomainError("activity_probability: radius " + std::to_string(r) + " outside [epsilon, r_max]");
        if (std::holds_alternative<FullActivity>(protocol_))
            return 1.0;
        return raw_activity(r);
    }

    /// a_t(s) = E[I^t exp(-s I)].
    [[nodiscard]] double single_weighted_moment(int t, double s) const
    {
        if (t < 0)
            throw DomainError("single_weighted_moment: order must be non-negative");
        if (!(s >= 0.0))
            throw DomainError("single_weighted_moment: s must be non-negative");
        const double upper = profile_->r_max();
        if (t == 0) {
            if (s == 0.0)
                return 1.0;
            const double lost = integrate(
                                    [&](double r) {
                                        const double x = p_t_ * std::pow(r, -alpha_);
                                        return density(r) * g_.one_minus_mgf(s * x);
                                    },
                                    lower_, upper, breakpoints_, options_)
                                    .value;
            return 1.0 - lost;
        }
        return integrate(
                   [&](double r) {
                       const double x = p_t_ * std::pow(r, -alpha_);
                       return density(r) * std::pow(x, t) * g_.laplace_weighted_moment(t, s * x);
                   },
                   lower_, upper, breakpoints_, moment_options_)
            .value;
    }

    /// M_I(s) = E[exp(-s I)].
    [[nodiscard]] double single_mgf(double s) const { return single_weighted_moment(0, s); }

    /// mu_I(n) = E[I^n]; n = 0 gives the probability that the SU is active.
    [[nodiscard]] double single_moment(int n) const
    {
        if (n < 0)
            throw DomainError("single_moment: order must be non-negative");
        const double upper = profile_->r_max();
        if (n == 0) {
            if (guard_)
                return 1.0 - profile_->cdf(r_f_);
            return integrate([&](double r) { return density(r); }, lower_, upper, breakpoints_, options_)
                .value;
        }
        const double na = n * alpha_;
        const double radial =
            integrate([&](double r) { return density(r) * std::pow(r, -na); }, lower_, upper, breakpoints_,
                      moment_options_)
                .value;
        return std::pow(p_t_, n) * g_.power_moment(n) * radial;
    }

    /// Probability that a random SU is active (zero-th moment).
    [[nodiscard]] double active_probability() const { return single_moment(0); }

private:
    [[nodiscard]] double raw_activity(double r) const
    {
        if (guard_)
            return r > r_f_ ? 1.0 : 0.0;
        const double f = h_.power_cdf(gamma_ * std::pow(r, alpha_) / sense_scale_);
        if (!coop_)
            return f;
        return f * std::pow(coop_outside_ + coop_inside_ * f, coop_exponent_);
    }

    // f_R(r) times the activity probability inside the integration range.
    [[nodiscard]] double density(double r) const
    {
        const double f = profile_->pdf(r);
        if (guard_)
            return f;
        return f * raw_activity(r);
    }

    ValidatedScenario scenario_;
    Protocol protocol_;
    std::shared_ptr<const DistanceProfile> profile_;
    QuadratureOptions options_;
    QuadratureOptions moment_options_;
    NakagamiPower g_;
    NakagamiPower h_;
    std::vector<double> breakpoints_;
    double alpha_ = 2.5;
    double p_t_ = 1.0;
    double sense_scale_ = 1.0;
    double lower_ = 1.0;
    bool guard_ = false;
    double r_f_ = 0.0;
    double gamma_ = 0.0;
    bool coop_ = false;
    double coop_outside_ = 1.0;
    double coop_inside_ = 0.0;
    int coop_exponent_ = 0;
};

} // namespace cognet

#endif // COGNET_PROTOCOL_KERNEL_HPP
