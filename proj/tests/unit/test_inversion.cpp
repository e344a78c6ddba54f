#include <cmath>
#include <memory>
#include <random>

#include <gtest/gtest.h>

#include "cognet/inversion.hpp"
#include "../support/oracles.hpp"

using namespace cognet;

namespace {

ValidatedScenario quad(int m = 100) { return validate(oracle::quadrilateral_scenario(150.0, m)); }

} // namespace

TEST(Inversion, FullActivityTargetGivesEpsilon)
{
    const auto vs = quad();
    const double full = full_activity_outage(vs);
    const auto res = solve_parameter(vs, GuardFamily{}, full);
    EXPECT_EQ(res.parameter, vs.region().epsilon);
}

TEST(Inversion, UnreachableTargetsNameEndpoints)
{
    const auto vs = quad();
    const double noise = noise_only_outage(vs);
    for (double target : {noise * 0.5, 0.9}) {
        try {
            (void)solve_parameter(vs, GuardFamily{}, target);
            FAIL() << target;
        } catch (const InversionError& e) {
            const std::string msg = e.what();
            EXPECT_NE(msg.find("noise-only"), std::string::npos) << msg;
            EXPECT_NE(msg.find("full-activity"), std::string::npos) << msg;
        }
    }
}

TEST(Inversion, RoundTrip)
{
    const auto vs = quad();
    const auto profile = std::make_shared<const DistanceProfile>(vs.region());
    const double lo = noise_only_outage(vs);
    const double hi = full_activity_outage(vs, profile);
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(0.02, 0.98);
    for (const ProtocolFamily& f : {ProtocolFamily{GuardFamily{}}, ProtocolFamily{ThresholdFamily{}},
                                    ProtocolFamily{CooperationFamily{8.0}}})
        for (int i = 0; i < 10; ++i) {
            const double target = lo + u(rng) * (hi - lo);
            const auto res = solve_parameter(vs, f, target, {}, profile);
            const double back = outage_probability(InterferenceKernel(vs, make_protocol(f, res.parameter), profile));
            EXPECT_NEAR(back, target, 1e-6) << family_name(f);
        }
}

TEST(Inversion, TradeoffCurve)
{
    const auto vs = quad();
    const std::vector<double> grid = {0.005, 0.01, 0.015, 0.02};
    const auto guard = tradeoff_curve(vs, GuardFamily{}, grid);
    const auto thr = tradeoff_curve(vs, ThresholdFamily{}, grid);
    ASSERT_EQ(guard.size(), grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        ASSERT_TRUE(guard[i].ok) << guard[i].error;
        ASSERT_TRUE(thr[i].ok) << thr[i].error;
        EXPECT_GE(guard[i].mean_active, thr[i].mean_active);
        if (i > 0) {
            EXPECT_GE(guard[i].mean_active, guard[i - 1].mean_active);
            EXPECT_GE(thr[i].mean_active, thr[i - 1].mean_active);
        }
    }
    // Unreachable points become gaps and the curve continues.
    const auto gaps = tradeoff_curve(vs, GuardFamily{}, {1e-9, 0.01, 0.99});
    EXPECT_FALSE(gaps[0].ok);
    EXPECT_FALSE(gaps[0].error.empty());
    EXPECT_TRUE(gaps[1].ok);
    EXPECT_FALSE(gaps[2].ok);

    const double full = full_activity_outage(vs);
    const auto end = tradeoff_curve(vs, GuardFamily{}, {full});
    ASSERT_TRUE(end[0].ok);
    EXPECT_EQ(end[0].mean_active, 100.0);
}
