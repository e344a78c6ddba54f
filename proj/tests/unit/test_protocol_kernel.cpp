#include <cmath>
#include <memory>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "cognet/closed_form.hpp"
#include "cognet/protocol_kernel.hpp"
#include "../support/oracles.hpp"

using namespace cognet;

namespace {

ValidatedScenario quad() { return validate(oracle::quadrilateral_scenario()); }

std::vector<Protocol> all_protocols()
{
    return {FullActivity{}, GuardZone{30.0}, Threshold{1e-4}, Cooperation{1e-4, 8.0}};
}

} // namespace

TEST(Kernel, ActivityProbability)
{
    const auto vs = quad();
    const InterferenceKernel g(vs, GuardZone{30.0});
    EXPECT_EQ(g.activity_probability(29.0), 0.0);
    EXPECT_EQ(g.activity_probability(31.0), 1.0);
    EXPECT_THROW((void)g.activity_probability(0.5), DomainError);

    const InterferenceKernel t(vs, Threshold{1e-4});
    const InterferenceKernel c0(vs, Cooperation{1e-4, 0.0});
    for (double r = 1.0; r < vs.r_max(); r += 3.3)
        EXPECT_EQ(t.activity_probability(r), c0.activity_probability(r));

    const InterferenceKernel big(vs, Threshold{1e12});
    EXPECT_EQ(big.activity_probability(2.0), 1.0);
    EXPECT_EQ(InterferenceKernel(vs, FullActivity{}).activity_probability(1.0), 1.0);
}

TEST(Kernel, CooperationActivityDecreasesWithRangeAndCount)
{
    const auto vs = quad();
    for (double r : {10.0, 40.0, 100.0}) {
        double prev = 2.0;
        for (double rc : {0.0, 2.0, 5.0, 8.0, 15.0}) {
            const double p = InterferenceKernel(vs, Cooperation{1e-4, rc}).activity_probability(r);
            EXPECT_LE(p, prev);
            prev = p;
        }
        prev = 2.0;
        for (int m : {1, 10, 100, 300}) {
            const double p = InterferenceKernel(vs.with_m_sus(m), Cooperation{1e-4, 8.0}).activity_probability(r);
            EXPECT_LE(p, prev);
            prev = p;
        }
    }
}

TEST(Kernel, MgfNormalizationAndMonotonicity)
{
    const auto vs = quad();
    for (const auto& p : all_protocols()) {
        const InterferenceKernel k(vs, p);
        EXPECT_EQ(k.single_mgf(0.0), 1.0);
        double prev = 1.0;
        for (int i = 1; i <= 100; ++i) {
            const double s = std::pow(10.0, -2.0 + 8.0 * i / 100.0);
            const double v = k.single_mgf(s);
            EXPECT_GT(v, 0.0);
            EXPECT_LE(v, prev + 1e-15) << protocol_name(p) << " s=" << s;
            prev = v;
        }
    }
}

TEST(Kernel, GuardAtRmaxSilencesEverything)
{
    const auto vs = quad();
    const InterferenceKernel k(vs, GuardZone{vs.r_max()});
    for (double s : {0.0, 1.0, 1e4, 1e8})
        EXPECT_EQ(k.single_mgf(s), 1.0);
    EXPECT_EQ(k.single_moment(0), 0.0);
}

TEST(Kernel, WeightedMomentsMatchMomentsAndDerivatives)
{
    const auto vs = quad();
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(2.0, 6.0);
    for (const auto& p : all_protocols()) {
        const InterferenceKernel k(vs, p);
        for (int t = 1; t <= 3; ++t)
            EXPECT_NEAR(k.single_weighted_moment(t, 0.0) / k.single_moment(t), 1.0, 1e-9);
        for (int i = 0; i < 20; ++i) {
            const double s = std::pow(10.0, u(rng));
            const double h = 1e-4 * s;
            const double d = -(k.single_mgf(s + h) - k.single_mgf(s - h)) / (2 * h);
            const double a1 = k.single_weighted_moment(1, s);
            EXPECT_GE(a1, 0.0);
            EXPECT_NEAR(d / a1, 1.0, 1e-6) << protocol_name(p) << " s=" << s;
        }
    }
}

TEST(Kernel, ZerothMoment)
{
    const auto vs = quad();
    EXPECT_EQ(InterferenceKernel(vs, FullActivity{}).single_moment(0), 1.0);
    const InterferenceKernel g(vs, GuardZone{30.0});
    EXPECT_EQ(g.single_moment(0), 1.0 - g.profile().cdf(30.0));
    // Guard-zone MGF at s = 0 via the quadrature path is 1.
    EXPECT_NEAR(g.single_weighted_moment(0, 1e-300), 1.0, 1e-15);
}

TEST(Kernel, ReductionChain)
{
    const auto vs = quad();
    const auto profile = std::make_shared<const DistanceProfile>(vs.region());
    const InterferenceKernel full(vs, FullActivity{}, profile);
    const InterferenceKernel g_eps(vs, GuardZone{1.0}, profile);
    const InterferenceKernel thr(vs, Threshold{1e-4}, profile);
    const InterferenceKernel c0(vs, Cooperation{1e-4, 0.0}, profile);
    const InterferenceKernel huge(vs, Threshold{1e12}, profile);
    for (double s : {0.0, 10.0, 1e3, 1e5}) {
        EXPECT_EQ(full.single_mgf(s), g_eps.single_mgf(s));
        EXPECT_EQ(thr.single_mgf(s), c0.single_mgf(s));
        EXPECT_NEAR(huge.single_mgf(s), full.single_mgf(s), 1e-9);
    }
    for (int n = 0; n <= 3; ++n) {
        EXPECT_EQ(full.single_moment(n), g_eps.single_moment(n));
        EXPECT_EQ(thr.single_moment(n), c0.single_moment(n));
        EXPECT_NEAR(huge.single_moment(n) / full.single_moment(n), 1.0, 1e-9);
    }
}

TEST(Kernel, QuadrilateralSingleMomentsKnownValues)
{
    // Aggregate first moments M mu_I(1) for M = 100.
    const auto vs = quad();
    EXPECT_NEAR(100 * InterferenceKernel(vs, GuardZone{30.0}).single_moment(1), 2.82e-3, 0.005e-3);
    EXPECT_NEAR(100 * InterferenceKernel(vs, Threshold{1e-4}).single_moment(1), 2.10e-3, 0.01e-3);
    EXPECT_NEAR(100 * InterferenceKernel(vs, Cooperation{1e-4, 8.0}).single_moment(1), 1.83e-3, 0.005e-3);
}

// ------------------------------------------------------------ closed forms

namespace {

RegularPolygonParams regular_params(int sides, double W)
{
    RegularPolygonParams p;
    p.sides = sides;
    p.circumradius = W;
    return p;
}

} // namespace

TEST(ClosedForm, MgfAtZeroIsOne)
{
    for (int L : {0, 4, 6}) {
        auto p = regular_params(L, 100.0);
        p.r_f = 20.0;
        p.s = 0.0;
        EXPECT_NEAR(mgf_guard_regular(p), 1.0, 1e-12) << L;
    }
}

TEST(ClosedForm, GuardMgfMatchesPipeline)
{
    for (int L : {0, 4, 6}) {
        const double W = 100.0;
        const auto vs = validate(L == 0 ? oracle::disk_scenario(W, 10) : oracle::regular_scenario(L, W, 10));
        for (double rf : {1.0, 25.0})
            for (double s : {1.0, 1e3, 1e5}) {
                auto p = regular_params(L, W);
                p.r_f = rf;
                p.s = s;
                const double want = closed_form_regular_polygon(ClosedFormKind::mgf_guard, p);
                const Protocol proto = rf == 1.0 ? Protocol{FullActivity{}} : Protocol{GuardZone{rf}};
                const double got = InterferenceKernel(vs, proto).single_mgf(s);
                EXPECT_NEAR(got, want, 1e-8) << "L=" << L << " r_f=" << rf << " s=" << s;
            }
    }
}

TEST(ClosedForm, GuardMomentMatchesPipeline)
{
    for (int L : {4, 6, 512}) {
        const double W = 100.0;
        const auto vs = validate(oracle::regular_scenario(L, W, 10));
        for (int n = 1; n <= 3; ++n) {
            auto p = regular_params(L, W);
            p.r_f = 20.0;
            p.n = n;
            const double want = closed_form_regular_polygon(ClosedFormKind::moment_guard, p);
            const double got = InterferenceKernel(vs, GuardZone{20.0}).single_moment(n);
            EXPECT_NEAR(got / want, 1.0, 1e-6) << "L=" << L << " n=" << n;
        }
    }
}

TEST(ClosedForm, ThresholdMomentMatchesPipeline)
{
    for (int L : {0, 4, 6, 512}) {
        const double W = 100.0;
        const auto vs = validate(L == 0 ? oracle::disk_scenario(W, 10) : oracle::regular_scenario(L, W, 10));
        for (int n = 1; n <= 3; ++n) {
            auto p = regular_params(L, W);
            p.gamma = 1e-4;
            p.n = n;
            const double want = closed_form_regular_polygon(ClosedFormKind::moment_threshold, p);
            const double got = InterferenceKernel(vs, Threshold{1e-4}).single_moment(n);
            EXPECT_NEAR(got / want, 1.0, 1e-6) << "L=" << L << " n=" << n;
        }
    }
}

TEST(ClosedForm, DomainChecks)
{
    auto p = regular_params(6, 100.0);
    p.r_f = 90.0; // beyond W_p
    EXPECT_THROW((void)moment_guard_regular(p), DomainError);
    p.r_f = 10.0;
    p.alpha = 2.0;
    p.n = 1;
    EXPECT_THROW((void)moment_guard_regular(p), DomainError);
    EXPECT_THROW((void)mgf_guard_regular(p), DomainError);
}
