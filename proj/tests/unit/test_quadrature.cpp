#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "cognet/quadrature.hpp"

using cognet::integrate;

TEST(Quadrature, SmoothIntegrands)
{
    EXPECT_NEAR(integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi).value, 2.0, 1e-12);
    EXPECT_NEAR(integrate([](double x) { return std::exp(-x * x); }, -5.0, 5.0).value,
                std::sqrt(std::numbers::pi) * std::erf(5.0), 1e-12);
}

TEST(Quadrature, ReversedLimitsNegate)
{
    const auto f = [](double x) { return x * x; };
    EXPECT_NEAR(integrate(f, 2.0, 0.0).value, -8.0 / 3.0, 1e-13);
    EXPECT_EQ(integrate(f, 1.0, 1.0).value, 0.0);
}

TEST(Quadrature, BreakpointsResolveJumps)
{
    const auto step = [](double x) { return x > 0.3 ? 1.0 : 0.0; };
    const double with = integrate(step, 0.0, 1.0, {0.3}).value;
    EXPECT_NEAR(with, 0.7, 1e-14);
    const auto r = integrate(step, 0.0, 1.0, {0.3});
    EXPECT_LE(r.intervals, 2u);
}

TEST(Quadrature, SingularEndpoint)
{
    // Integral of x^-0.5 over [0, 1] = 2.
    EXPECT_NEAR(integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0).value, 2.0, 1e-8);
}

TEST(Quadrature, RelativeToleranceOnTinyValues)
{
    cognet::QuadratureOptions opt;
    opt.abs_tol = 0.0;
    const double v = integrate([](double r) { return std::pow(r, -6.5); }, 1.0, 200.0, {}, opt).value;
    EXPECT_NEAR(v, (1.0 - std::pow(200.0, -5.5)) / 5.5, 1e-14);
    const double tiny = integrate([](double r) { return 1e-20 * std::pow(r, -6.5); }, 1.0, 200.0, {}, opt).value;
    EXPECT_NEAR(tiny / 1e-20, v, 1e-9 * v);
}

TEST(Quadrature, FailureCarriesAchievedError)
{
    cognet::QuadratureOptions opt;
    opt.max_intervals = 3;
    opt.abs_tol = 0.0;
    opt.rel_tol = 1e-15;
    try {
        (void)integrate([](double x) { return std::sin(1.0 / x); }, 1e-4, 1.0, {}, opt);
        FAIL() << "expected QuadratureError";
    } catch (const cognet::QuadratureError& e) {
        EXPECT_GT(e.achieved_error(), e.requested_error());
    }
}
