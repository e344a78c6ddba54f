#include <cmath>
#include <memory>
#include <random>

#include <gtest/gtest.h>

#include "cognet/network_metrics.hpp"
#include "../support/oracles.hpp"

using namespace cognet;

namespace {

ValidatedScenario quad(int m = 100) { return validate(oracle::quadrilateral_scenario(150.0, m)); }

} // namespace

TEST(Metrics, AggregateMgf)
{
    const auto vs = quad();
    const InterferenceKernel k(vs, Threshold{1e-4});
    EXPECT_EQ(aggregate_mgf(k, 0.0), 1.0);
    const InterferenceKernel one(vs.with_m_sus(1), Threshold{1e-4});
    EXPECT_EQ(aggregate_mgf(one, 321.0), one.single_mgf(321.0));
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.0, 5.0);
    for (int i = 0; i < 10; ++i) {
        const double s = std::pow(10.0, u(rng));
        EXPECT_NEAR(std::log(aggregate_mgf(k, s)), 100.0 * std::log(k.single_mgf(s)), 1e-10);
    }
}

TEST(Metrics, Cumulants)
{
    const auto vs = quad();
    const InterferenceKernel k(vs, GuardZone{30.0});
    const auto c = cumulants(k, 6);
    EXPECT_EQ(c.order(), 6);
    EXPECT_DOUBLE_EQ(c(1), 100.0 * k.single_moment(1));
    EXPECT_NEAR(c.single[1], k.single_moment(2) - std::pow(k.single_moment(1), 2), 1e-25);
    EXPECT_GE(c(2), 0.0);
    EXPECT_THROW((void)cumulants(k, 7), DomainError);
    EXPECT_THROW((void)cumulants(k, 0), DomainError);

    // Moments and cumulants are inverse transforms.
    const auto back = cumulants_from_moments(moments_from_cumulants(c.values));
    for (int n = 0; n < 6; ++n)
        EXPECT_NEAR(back[n] / c.values[n], 1.0, 1e-9);
}

TEST(Metrics, QuadrilateralOutageValues)
{
    const auto vs = quad();
    EXPECT_NEAR(outage_probability(InterferenceKernel(vs, Cooperation{1e-4, 8.0})), 5.33e-3, 0.005e-3);
    EXPECT_NEAR(outage_probability(InterferenceKernel(vs, Threshold{1e-4})), 7.59e-3, 0.005e-3);
    EXPECT_NEAR(outage_probability(InterferenceKernel(vs, GuardZone{30.0})), 1.54e-2, 0.005e-2);
}

TEST(Metrics, UnitShapeOutageClosedForm)
{
    auto s = oracle::quadrilateral_scenario();
    s.m0 = 1;
    const auto vs = validate(s);
    for (const Protocol& p : {Protocol{GuardZone{30.0}}, Protocol{Threshold{1e-4}}, Protocol{FullActivity{}}}) {
        const InterferenceKernel k(vs, p);
        const double s_star = s.beta * std::pow(s.r0, s.alpha) / s.p_t0;
        const double want = 1.0 - std::exp(-s.beta / s.rho0) * std::pow(k.single_mgf(s_star), s.m_sus);
        EXPECT_NEAR(outage_probability(k), want, 1e-15);
    }
}

TEST(Metrics, VanishingThresholdGivesNoOutage)
{
    auto s = oracle::quadrilateral_scenario();
    s.beta = 1e-12;
    EXPECT_LT(outage_probability(InterferenceKernel(validate(s), GuardZone{30.0})), 1e-9);
}

TEST(Metrics, GeneratingPolynomialMatchesEnumeration)
{
    for (int m0 : {1, 2, 3})
        for (int m : {1, 2, 3, 4, 5}) {
            auto s = oracle::quadrilateral_scenario(150.0, m);
            s.m0 = m0;
            const auto vs = validate(s);
            const InterferenceKernel k(vs, Threshold{1e-4});
            const auto a = outage_weighted_moments(k);
            const double want = oracle::brute_force_outage(m0, m, s.beta, s.rho0, s.r0, s.alpha, s.p_t0, a);
            EXPECT_NEAR(outage_from_weighted_moments(vs, a), want, 1e-12) << m0 << ' ' << m;
        }
    // Short link and weak noise push the coefficients to larger magnitudes.
    for (int m : {1, 3, 5}) {
        auto s = oracle::quadrilateral_scenario(150.0, m);
        s.m0 = 4;
        s.r0 = 60.0;
        s.rho0 = 10.0;
        const auto vs = validate(s);
        const auto a = outage_weighted_moments(InterferenceKernel(vs, GuardZone{5.0}));
        const double want = oracle::brute_force_outage(4, m, s.beta, s.rho0, s.r0, s.alpha, s.p_t0, a);
        EXPECT_GT(want, 1e-3) << m;
        EXPECT_NEAR(outage_from_weighted_moments(vs, a), want, 1e-12) << m;
    }
}

TEST(Metrics, OutageMonotonicity)
{
    auto sweep = [](auto mutate, const Protocol& p) {
        std::vector<double> v;
        for (int i = 0; i < 5; ++i) {
            auto s = oracle::quadrilateral_scenario();
            mutate(s, i);
            v.push_back(outage_probability(InterferenceKernel(validate(s), p)));
        }
        return v;
    };
    for (const Protocol& p : {Protocol{GuardZone{30.0}}, Protocol{Threshold{1e-4}}}) {
        const auto by_m = sweep([](Scenario& s, int i) { s.m_sus = 20 + 50 * i; }, p);
        const auto by_beta = sweep([](Scenario& s, int i) { s.beta = 0.25 * (i + 1); }, p);
        const auto by_rho = sweep([](Scenario& s, int i) { s.rho0 = 10.0 * std::pow(3.0, i); }, p);
        for (int i = 1; i < 5; ++i) {
            EXPECT_GE(by_m[i], by_m[i - 1]);
            EXPECT_GE(by_beta[i], by_beta[i - 1]);
            EXPECT_LE(by_rho[i], by_rho[i - 1]);
        }
        for (double v : by_m) {
            EXPECT_GE(v, 0.0);
            EXPECT_LE(v, 1.0);
        }
    }
    const auto vs = quad();
    double prev = 1.0;
    for (double rf : {1.0, 10.0, 30.0, 60.0, 120.0}) {
        const double v = outage_probability(InterferenceKernel(vs, GuardZone{rf}));
        EXPECT_LE(v, prev);
        prev = v;
    }
    prev = 0.0;
    for (double g : {1e-6, 1e-5, 1e-4, 1e-3, 1e-2}) {
        const double v = outage_probability(InterferenceKernel(vs, Threshold{g}));
        EXPECT_GE(v, prev);
        prev = v;
    }
}

TEST(Metrics, MeanActive)
{
    const auto vs = quad();
    EXPECT_EQ(mean_active(InterferenceKernel(vs, FullActivity{})), 100.0);
    const InterferenceKernel g(vs, GuardZone{30.0});
    EXPECT_DOUBLE_EQ(mean_active(g), 100.0 * (1.0 - g.profile().cdf(30.0)));
    double prev = 101.0;
    for (double rc : {0.0, 4.0, 8.0, 16.0}) {
        const double v = mean_active(InterferenceKernel(vs, Cooperation{1e-4, rc}));
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, prev);
        prev = v;
    }
}

TEST(Metrics, NoiseOnlyOutage)
{
    const auto vs = quad();
    const double x = 3.0 * 1.0 / 100.0;
    EXPECT_NEAR(noise_only_outage(vs), 1.0 - std::exp(-x) * (1.0 + x + x * x / 2.0), 1e-15);
}
