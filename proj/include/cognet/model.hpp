#ifndef COGNET_MODEL_HPP
#define COGNET_MODEL_HPP

// Scenario and protocol records, invariant checks, and the derived
// quantities every other module shares.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "cognet/errors.hpp"

namespace cognet {

struct Point
{
    double x = 0.0;
    double y = 0.0;

    friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
    friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
    friend Point operator*(double k, Point a) { return {k * a.x, k * a.y}; }
    friend bool operator==(Point, Point) = default;
};

inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double distance(Point a, Point b) { return norm(a - b); }

/// Strictly convex polygon with counter-clockwise vertices. Construct
/// through from_vertices(), which enforces the invariants.
class ConvexPolygon
{
public:
    static ConvexPolygon from_vertices(std::vector<Point> vertices);

    [[nodiscard]] const std::vector<Point>& vertices() const noexcept { return vertices_; }
    [[nodiscard]] std::size_t size() const noexcept { return vertices_.size(); }
    [[nodiscard]] Point vertex(std::size_t i) const { return vertices_[i % vertices_.size()]; }

    [[nodiscard]] double area() const
    {
        double twice = 0.0;
        for (std::size_t i = 0; i < size(); ++i)
            twice += cross(vertex(i), vertex(i + 1));
        return 0.5 * twice;
    }

    /// Signed distance from p to the supporting line of edge i (positive inside).
    [[nodiscard]] double edge_distance(std::size_t i, Point p) const
    {
        const Point a = vertex(i);
        const Point e = vertex(i + 1) - a;
        return cross(e, p - a) / norm(e);
    }

    [[nodiscard]] bool contains(Point p) const
    {
        for (std::size_t i = 0; i < size(); ++i)
            if (edge_distance(i, p) < 0.0)
                return false;
        return true;
    }

    [[nodiscard]] bool strictly_contains(Point p) const
    {
        for (std::size_t i = 0; i < size(); ++i)
            if (!(edge_distance(i, p) > 0.0))
                return false;
        return true;
    }

    /// Smallest distance from an interior point to the boundary.
    [[nodiscard]] double boundary_distance(Point p) const
    {
        double d = edge_distance(0, p);
        for (std::size_t i = 1; i < size(); ++i)
            d = std::min(d, edge_distance(i, p));
        return d;
    }

    [[nodiscard]] double farthest_vertex_distance(Point p) const
    {
        double d = 0.0;
        for (const auto& v : vertices_)
            d = std::max(d, distance(v, p));
        return d;
    }

private:
    explicit ConvexPolygon(std::vector<Point> vertices) : vertices_(std::move(vertices)) {}
    std::vector<Point> vertices_;
};

inline ConvexPolygon ConvexPolygon::from_vertices(std::vector<Point> vertices)
{
    const std::size_t n = vertices.size();
    if (n < 3)
        throw ValidationError("polygon: at least 3 vertices are required, got " + std::to_string(n));
    for (const auto& v : vertices)
        if (!std::isfinite(v.x) || !std::isfinite(v.y))
            throw ValidationError("polygon: vertex coordinates must be finite");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (distance(vertices[i], vertices[j]) < 1e-9)
                throw ValidationError("polygon: vertices " + std::to_string(i) + " and " +
                                      std::to_string(j) + " coincide");

    int right_turns = 0;
    std::size_t first_bad = n;
    double turning = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Point prev = vertices[(i + n - 1) % n];
        const Point cur = vertices[i];
        const Point next = vertices[(i + 1) % n];
        const Point e0 = cur - prev;
        const Point e1 = next - cur;
        const double c = cross(e0, e1);
        if (!(c > 0.0)) {
            ++right_turns;
            if (first_bad == n)
                first_bad = i;
        }
        turning += std::atan2(c, dot(e0, e1));
    }
    if (right_turns == static_cast<int>(n))
        throw ValidationError("polygon: vertices are in clockwise order; list them counter-clockwise");
    if (right_turns > 0)
        throw ValidationError("polygon: not strictly convex at vertex " + std::to_string(first_bad) +
                              " (" + std::to_string(vertices[first_bad].x) + ", " +
                              std::to_string(vertices[first_bad].y) + ")");
    if (std::abs(turning - 2.0 * std::numbers::pi) > 1e-6)
        throw ValidationError("polygon: boundary is self-intersecting");
    return ConvexPolygon(std::move(vertices));
}

/// Regular L-gon inscribed in a circle of radius circumradius.
inline ConvexPolygon make_regular_polygon(int sides, double circumradius, Point center = {},
                                          double rotation = 0.0)
{
    if (sides < 3)
        throw ValidationError("regular polygon: at least 3 sides are required");
    if (!(circumradius > 0.0))
        throw ValidationError("regular polygon: circumradius must be positive");
    std::vector<Point> v;
    v.reserve(static_cast<std::size_t>(sides));
    for (int k = 0; k < sides; ++k) {
        const double phi = rotation + 2.0 * std::numbers::pi * k / sides;
        v.push_back({center.x + circumradius * std::cos(phi), center.y + circumradius * std::sin(phi)});
    }
    return ConvexPolygon::from_vertices(std::move(v));
}

struct Disk
{
    Point center;
    double radius = 0.0;
};

using RegionShape = std::variant<ConvexPolygon, Disk>;

/// Network area A with the PU-Rx and its exclusion zone B of radius epsilon.
struct NetworkRegion
{
    RegionShape shape = Disk{};
    Point pu_rx;
    double epsilon = 1.0;

    [[nodiscard]] double area() const
    {
        return std::visit(
            [](const auto& s) {
                if constexpr (std::is_same_v<std::decay_t<decltype(s)>, Disk>)
                    return std::numbers::pi * s.radius * s.radius;
                else
                    return s.area();
            },
            shape);
    }

    /// |A'| = |A| - pi eps^2.
    [[nodiscard]] double area_prime() const { return area() - std::numbers::pi * epsilon * epsilon; }

    /// Largest distance from the PU-Rx to a point of the region.
    [[nodiscard]] double r_max() const
    {
        return std::visit(
            [this](const auto& s) {
                if constexpr (std::is_same_v<std::decay_t<decltype(s)>, Disk>)
                    return distance(s.center, pu_rx) + s.radius;
                else
                    return s.farthest_vertex_distance(pu_rx);
            },
            shape);
    }

    /// Distance from the PU-Rx to the nearest boundary point.
    [[nodiscard]] double boundary_distance() const
    {
        return std::visit(
            [this](const auto& s) {
                if constexpr (std::is_same_v<std::decay_t<decltype(s)>, Disk>)
                    return s.radius - distance(s.center, pu_rx);
                else
                    return s.boundary_distance(pu_rx);
            },
            shape);
    }
};

/// Geometric checks only. The exclusion radius may be zero here; the
/// scenario-level check adds the epsilon >= 1 requirement.
inline void validate_region(const NetworkRegion& region)
{
    if (const auto* disk = std::get_if<Disk>(&region.shape)) {
        if (!(disk->radius > 0.0) || !std::isfinite(disk->radius))
            throw ValidationError("region: disk radius must be positive");
    }
    if (!std::isfinite(region.pu_rx.x) || !std::isfinite(region.pu_rx.y))
        throw ValidationError("region: pu_rx coordinates must be finite");
    if (!(region.boundary_distance() > 0.0))
        throw ValidationError("region: pu_rx must lie strictly inside the region");
    if (!(region.epsilon >= 0.0) || !std::isfinite(region.epsilon))
        throw ValidationError("region: epsilon must be a non-negative length");
    if (region.epsilon > region.boundary_distance())
        throw ValidationError("region: exclusion disk of radius " + std::to_string(region.epsilon) +
                              " exceeds the polygon (boundary distance " +
                              std::to_string(region.boundary_distance()) + ")");
    if (!(region.area_prime() > 0.0))
        throw ValidationError("region: usable area |A'| must be positive");
}

/// Full experiment description. Powers and thresholds are linear.
struct Scenario
{
    NetworkRegion region;
    int m_sus = 100;      ///< number of secondary users M
    double p_t0 = 1.0;    ///< PU-Tx transmit power
    double p_t = 1.0;     ///< SU transmit power
    double p_ts = 1.0;    ///< PU-Rx transmit power on the sensing channel
    double r0 = 5.0;      ///< PU-Tx to PU-Rx distance
    double alpha = 2.5;   ///< path-loss exponent
    double m0 = 3.0;      ///< desired-link Nakagami shape (integer)
    double mg = 3.0;      ///< SU-to-PU-Rx channel shape
    double mh = 3.0;      ///< sensing channel shape
    double beta = 1.0;    ///< SINR threshold
    double rho0 = 100.0;  ///< average SNR of the PU link

    /// Noise power, derived from rho0 = p_t0 r0^-alpha / N.
    [[nodiscard]] double noise_power() const { return p_t0 * std::pow(r0, -alpha) / rho0; }
};

struct FullActivity
{};

struct GuardZone
{
    double r_f = 0.0;
};

struct Threshold
{
    double gamma = 0.0;
};

struct Cooperation
{
    double gamma = 0.0;
    double r_c = 0.0;
};

using Protocol = std::variant<FullActivity, GuardZone, Threshold, Cooperation>;

inline std::string protocol_name(const Protocol& p)
{
    struct Namer
    {
        std::string operator()(const FullActivity&) const { return "full"; }
        std::string operator()(const GuardZone&) const { return "guard"; }
        std::string operator()(const Threshold&) const { return "threshold"; }
        std::string operator()(const Cooperation&) const { return "coop"; }
    };
    return std::visit(Namer{}, p);
}

/// Validated, immutable scenario with derived geometry attached.
class ValidatedScenario
{
public:
    [[nodiscard]] const Scenario& scenario() const noexcept { return scenario_; }
    [[nodiscard]] const NetworkRegion& region() const noexcept { return scenario_.region; }
    [[nodiscard]] int m_sus() const noexcept { return scenario_.m_sus; }
    [[nodiscard]] int m0() const noexcept { return m0_; }
    [[nodiscard]] double r_max() const noexcept { return r_max_; }
    [[nodiscard]] double area() const noexcept { return area_; }
    [[nodiscard]] double area_prime() const noexcept { return area_prime_; }
    [[nodiscard]] double noise_power() const { return scenario_.noise_power(); }

    /// Returns a copy with a different SU count, re-validated.
    [[nodiscard]] ValidatedScenario with_m_sus(int m) const;

private:
    friend ValidatedScenario validate(const Scenario& scenario);
    explicit ValidatedScenario(Scenario s) : scenario_(std::move(s)) {}

    Scenario scenario_;
    int m0_ = 1;
    double r_max_ = 0.0;
    double area_ = 0.0;
    double area_prime_ = 0.0;
};

/// Checks every scenario invariant; throws ValidationError naming the
/// first one violated.
inline ValidatedScenario validate(const Scenario& s)
{
    validate_region(s.region);
    if (s.region.epsilon < 1.0)
        throw ValidationError("scenario: epsilon must be at least 1 m, got " +
                              std::to_string(s.region.epsilon));
    if (s.m_sus < 1)
        throw ValidationError("scenario: number of secondary users must be positive");
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw ValidationError(std::string("scenario: ") + name + " must be positive and finite");
    };
    positive(s.p_t0, "p_t0");
    positive(s.p_t, "p_t");
    positive(s.p_ts, "p_ts");
    positive(s.r0, "r0");
    positive(s.beta, "beta");
    positive(s.rho0, "rho0");
    if (!(s.alpha >= 2.0 && s.alpha <= 6.0))
        throw ValidationError("scenario: path-loss exponent must lie in [2, 6], got " +
                              std::to_string(s.alpha));
    if (!(s.m0 >= 1.0) || s.m0 != std::floor(s.m0) || s.m0 > 1e6)
        throw ValidationError("scenario: desired-link fading parameter m0 must be a positive integer, got " +
                              std::to_string(s.m0));
    if (!(s.mg >= 0.5) || !std::isfinite(s.mg))
        throw ValidationError("scenario: mg must be at least 0.5");
    if (!(s.mh >= 0.5) || !std::isfinite(s.mh))
        throw ValidationError("scenario: mh must be at least 0.5");

    ValidatedScenario v(s);
    v.m0_ = static_cast<int>(s.m0);
    v.r_max_ = s.region.r_max();
    v.area_ = s.region.area();
    v.area_prime_ = s.region.area_prime();
    return v;
}

inline ValidatedScenario ValidatedScenario::with_m_sus(int m) const
{
    Scenario s = scenario_;
    s.m_sus = m;
    return validate(s);
}

/// Protocol invariants relative to a scenario.
inline void validate_protocol(const ValidatedScenario& vs, const Protocol& protocol)
{
    const double eps = vs.region().epsilon;
    if (const auto* g = std::get_if<GuardZone>(&protocol)) {
        if (!(g->r_f >= eps) || !std::isfinite(g->r_f))
            throw ValidationError("protocol: guard-zone radius r_f must be at least epsilon (" +
                                  std::to_string(eps) + "), got " + std::to_string(g->r_f));
    } else if (const auto* t = std::get_if<Threshold>(&protocol)) {
        if (!(t->gamma > 0.0) || std::isnan(t->gamma))
            throw ValidationError("protocol: activation threshold gamma must be positive");
    } else if (const auto* c = std::get_if<Cooperation>(&protocol)) {
        if (!(c->gamma > 0.0) || std::isnan(c->gamma))
            throw ValidationError("protocol: activation threshold gamma must be positive");
        if (!(c->r_c >= 0.0) || !std::isfinite(c->r_c))
            throw ValidationError("protocol: cooperation range r_c must be non-negative");
        if (!(std::numbers::pi * c->r_c * c->r_c < vs.area_prime()))
            throw ValidationError("protocol: cooperation disk area pi r_c^2 must be below |A'|");
    }
}

inline ValidatedScenario validate(const Scenario& scenario, const Protocol& protocol)
{
    auto vs = validate(scenario);
    validate_protocol(vs, protocol);
    return vs;
}

} // namespace cognet

#endif // COGNET_MODEL_HPP
