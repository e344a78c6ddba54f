#include <cmath>
#include <string>

#include <gtest/gtest.h>

#include "cognet/model.hpp"
#include "../support/oracles.hpp"

using namespace cognet;

namespace {

std::string message_of(const Scenario& s)
{
    try {
        (void)validate(s);
    } catch (const ValidationError& e) {
        return e.what();
    }
    return {};
}

} // namespace

TEST(Model, ExclusionDiskLargerThanInradiusIsRejected)
{
    Scenario s;
    s.region = {ConvexPolygon::from_vertices({{0, 0}, {1, 0}, {1, 1}, {0, 1}}), {0.5, 0.5}, 0.6};
    const auto msg = message_of(s);
    EXPECT_NE(msg.find("exceeds the polygon"), std::string::npos) << msg;
}

TEST(Model, QuadrilateralDefaultsAccepted)
{
    const auto q = oracle::make_quadrilateral(150.0);
    const auto vs = validate(oracle::quadrilateral_scenario());
    double far = 0.0;
    for (const auto& v : q.vertices)
        far = std::max(far, distance(v, q.pu_rx));
    EXPECT_DOUBLE_EQ(vs.r_max(), far);
    EXPECT_NEAR(vs.r_max(), q.dV2, 1e-9);
    EXPECT_NEAR(vs.area(), q.area, 1e-9);
    EXPECT_NEAR(vs.area_prime(), q.area - std::numbers::pi, 1e-9);
}

TEST(Model, NonIntegerDesiredLinkShapeRejected)
{
    auto s = oracle::quadrilateral_scenario();
    s.m0 = 2.5;
    EXPECT_NE(message_of(s).find("m0"), std::string::npos);
}

TEST(Model, InvariantViolationsNamed)
{
    auto base = oracle::quadrilateral_scenario();
    auto s = base;
    s.alpha = 1.5;
    EXPECT_NE(message_of(s).find("path-loss"), std::string::npos);
    s = base;
    s.p_t = 0.0;
    EXPECT_NE(message_of(s).find("p_t"), std::string::npos);
    s = base;
    s.mg = 0.4;
    EXPECT_NE(message_of(s).find("mg"), std::string::npos);
    s = base;
    s.region.epsilon = 0.5;
    EXPECT_NE(message_of(s).find("epsilon"), std::string::npos);
    s = base;
    s.m_sus = 0;
    EXPECT_FALSE(message_of(s).empty());
    s = base;
    s.region.pu_rx = {-1.0, 5.0};
    EXPECT_NE(message_of(s).find("inside"), std::string::npos);
}

TEST(Model, PolygonChecks)
{
    EXPECT_THROW(ConvexPolygon::from_vertices({{0, 0}, {1, 0}}), ValidationError);
    EXPECT_THROW(ConvexPolygon::from_vertices({{0, 0}, {0, 1}, {1, 1}, {1, 0}}), ValidationError); // clockwise
    EXPECT_THROW(ConvexPolygon::from_vertices({{0, 0}, {1, 0}, {1, 0}, {0, 1}}), ValidationError); // repeated
    EXPECT_THROW(ConvexPolygon::from_vertices({{0, 0}, {1, 0}, {2, 0}, {0, 1}}), ValidationError); // collinear
    try {
        (void)ConvexPolygon::from_vertices({{0, 0}, {100, 0}, {100, 100}, {50, 20}, {0, 100}});
        FAIL();
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("vertex 3"), std::string::npos) << e.what();
    }
}

TEST(Model, ValidateIsIdempotent)
{
    const auto vs = validate(oracle::quadrilateral_scenario());
    const auto again = validate(vs.scenario());
    EXPECT_EQ(again.r_max(), vs.r_max());
    EXPECT_EQ(again.area_prime(), vs.area_prime());
    EXPECT_EQ(vs.with_m_sus(7).m_sus(), 7);
}

TEST(Model, NoisePowerReproducesSnr)
{
    auto s = oracle::quadrilateral_scenario();
    for (double rho : {1.0, 100.0, 3.7e4}) {
        s.rho0 = rho;
        const double n = s.noise_power();
        EXPECT_NEAR(s.p_t0 * std::pow(s.r0, -s.alpha) / n, rho, rho * 4e-16);
    }
}

TEST(Model, ProtocolInvariants)
{
    const auto vs = validate(oracle::quadrilateral_scenario());
    EXPECT_THROW(validate_protocol(vs, GuardZone{0.5}), ValidationError);
    EXPECT_NO_THROW(validate_protocol(vs, GuardZone{1.0}));
    EXPECT_THROW(validate_protocol(vs, Threshold{0.0}), ValidationError);
    EXPECT_THROW(validate_protocol(vs, Cooperation{1e-4, -1.0}), ValidationError);
    EXPECT_THROW(validate_protocol(vs, Cooperation{1e-4, 1e3}), ValidationError);
    EXPECT_NO_THROW(validate_protocol(vs, Cooperation{1e-4, 0.0}));
    EXPECT_EQ(protocol_name(FullActivity{}), "full");
    EXPECT_EQ(protocol_name(Cooperation{}), "coop");
}
