#ifndef COGNET_GEOMETRY_HPP
#define COGNET_GEOMETRY_HPP

// Distance distribution of a uniform point in A' = A \ B measured from the
// PU-Rx, and uniform sampling of A'.
//
// The density is f_R(r) = r * lambda(r) / |A'|, where lambda(r) is the
// angular length of the circle of radius r around the PU-Rx that lies
// inside the region. For a convex polygon a point of that circle is outside
// iff it lies beyond at least one edge line, and the edge at perpendicular
// distance d < r cuts out the arc of half-width acos(d / r) around its
// outward normal. lambda(r) is 2 pi minus the measure of the union of those
// arcs. The CDF is computed independently from the exact area of the
// intersection of the disk of radius r with the region.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <random>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "cognet/errors.hpp"
#include "cognet/model.hpp"
#include "cognet/quadrature.hpp"

namespace cognet {

namespace detail {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kBreakpointSnap = 1e-9;

// Measure of the union of arcs [center - half, center + half] on the circle.
inline double union_of_arcs(std::vector<std::pair<double, double>>& arcs)
{
    std::vector<std::pair<double, double>> spans;
    spans.reserve(2 * arcs.size());
    for (const auto& [center, half] : arcs) {
        if (half >= std::numbers::pi)
            return kTwoPi;
        double lo = std::fmod(center - half, kTwoPi);
        if (lo < 0.0)
            lo += kTwoPi;
        const double hi = lo + 2.0 * half;
        if (hi > kTwoPi) {
            spans.emplace_back(lo, kTwoPi);
            spans.emplace_back(0.0, hi - kTwoPi);
        } else {
            spans.emplace_back(lo, hi);
        }
    }
    std::sort(spans.begin(), spans.end());
    double total = 0.0;
    double cur_lo = 0.0;
    double cur_hi = -1.0;
    for (const auto& [lo, hi] : spans) {
        if (lo > cur_hi) {
            if (cur_hi > cur_lo)
                total += cur_hi - cur_lo;
            cur_lo = lo;
            cur_hi = hi;
        } else {
            cur_hi = std::max(cur_hi, hi);
        }
    }
    if (cur_hi > cur_lo)
        total += cur_hi - cur_lo;
    return std::min(total, kTwoPi);
}

// Signed area of circle(0, r) intersected with triangle (0, a, b).
inline double circle_triangle_area(Point a, Point b, double r)
{
    const Point d = b - a;
    const double qa = dot(d, d);
    const double qb = 2.0 * dot(a, d);
    const double qc = dot(a, a) - r * r;

    Point pts[4];
    int count = 0;
    pts[count++] = a;
    const double disc = qb * qb - 4.0 * qa * qc;
    if (qa > 0.0 && disc > 0.0) {
        const double sq = std::sqrt(disc);
        const double t1 = (-qb - sq) / (2.0 * qa);
        const double t2 = (-qb + sq) / (2.0 * qa);
        if (t1 > 0.0 && t1 < 1.0)
            pts[count++] = a + t1 * d;
        if (t2 > 0.0 && t2 < 1.0)
            pts[count++] = a + t2 * d;
    }
    pts[count++] = b;

    double area = 0.0;
    for (int i = 0; i + 1 < count; ++i) {
        const Point p = pts[i];
        const Point q = pts[i + 1];
        const Point mid = 0.5 * (p + q);
        if (dot(mid, mid) <= r * r)
            area += 0.5 * cross(p, q);
        else
            area += 0.5 * r * r * std::atan2(cross(p, q), dot(p, q));
    }
    return area;
}

// Area of the intersection of two disks with radii r1, r2 and centers d apart.
inline double lens_area(double r1, double r2, double d)
{
    if (d >= r1 + r2)
        return 0.0;
    if (d + r1 <= r2)
        return std::numbers::pi * r1 * r1;
    if (d + r2 <= r1)
        return std::numbers::pi * r2 * r2;
    const double c1 = std::clamp((d * d + r1 * r1 - r2 * r2) / (2.0 * d * r1), -1.0, 1.0);
    const double c2 = std::clamp((d * d + r2 * r2 - r1 * r1) / (2.0 * d * r2), -1.0, 1.0);
    const double k = (-d + r1 + r2) * (d + r1 - r2) * (d - r1 + r2) * (d + r1 + r2);
    return r1 * r1 * std::acos(c1) + r2 * r2 * std::acos(c2) - 0.5 * std::sqrt(std::max(0.0, k));
}

} // namespace detail

/// Precomputed distance-distribution description for a region. Immutable;
/// every query is a pure function.
class DistanceProfile
{
public:
    explicit DistanceProfile(NetworkRegion region) : region_(std::move(region))
    {
        validate_region(region_);
        epsilon_ = region_.epsilon;
        r_max_ = region_.r_max();
        area_ = region_.area();
        area_prime_ = region_.area_prime();

        std::vector<double> critical;
        if (const auto* poly = std::get_if<ConvexPolygon>(&region_.shape)) {
            for (std::size_t i = 0; i < poly->size(); ++i) {
                const Point a = poly->vertex(i);
                const Point e = poly->vertex(i + 1) - a;
                // Outward normal of a counter-clockwise edge.
                const double len = norm(e);
                const double nx = e.y / len;
                const double ny = -e.x / len;
                const double d = poly->edge_distance(i, region_.pu_rx);
                edges_.push_back({d, std::atan2(ny, nx)});
                critical.push_back(d);
                critical.push_back(distance(a, region_.pu_rx));
            }
        } else {
            const auto& disk = std::get<Disk>(region_.shape);
            disk_offset_ = distance(disk.center, region_.pu_rx);
            critical.push_back(disk.radius - disk_offset_);
        }

        breakpoints_.push_back(epsilon_);
        std::sort(critical.begin(), critical.end());
        for (double c : critical) {
            if (c <= epsilon_ + detail::kBreakpointSnap || c >= r_max_ - detail::kBreakpointSnap)
                continue;
            if (c - breakpoints_.back() > detail::kBreakpointSnap)
                breakpoints_.push_back(c);
        }
        breakpoints_.push_back(r_max_);
    }

    [[nodiscard]] const NetworkRegion& region() const noexcept { return region_; }
    [[nodiscard]] double epsilon() const noexcept { return epsilon_; }
    [[nodiscard]] double r_max() const noexcept { return r_max_; }
    [[nodiscard]] double area() const noexcept { return area_; }
    [[nodiscard]] double area_prime() const noexcept { return area_prime_; }

    /// Sorted critical radii: epsilon, every edge and vertex distance in
    /// (epsilon, r_max), then r_max.
    [[nodiscard]] std::span<const double> breakpoints() const noexcept { return breakpoints_; }

    /// Angular length (radians) of the circle of radius r around the PU-Rx
    /// that lies inside the region.
    [[nodiscard]] double angular_measure(double r) const
    {
        const double tol = detail::kBreakpointSnap * std::max(1.0, r_max_);
        if (!(r >= epsilon_ - tol && r <= r_max_ + tol))
            throw DomainError("angular_measure: radius " + std::to_string(r) + " outside [" +
                              std::to_string(epsilon_) + ", " + std::to_string(r_max_) + "]");
        return raw_angular_measure(r);
    }

    /// f_R(r); zero outside [epsilon, r_max].
    [[nodiscard]] double pdf(double r) const
    {
        if (!(r >= epsilon_ && r <= r_max_))
            return 0.0;
        return r * raw_angular_measure(r) / area_prime_;
    }

    /// Area of the intersection of the disk of radius r around the PU-Rx with A.
    [[nodiscard]] double disk_intersection_area(double r) const
    {
        if (!(r > 0.0))
            return 0.0;
        if (const auto* poly = std::get_if<ConvexPolygon>(&region_.shape)) {
            double area = 0.0;
            for (std::size_t i = 0; i < poly->size(); ++i)
                area += detail::circle_triangle_area(poly->vertex(i) - region_.pu_rx,
                                                     poly->vertex(i + 1) - region_.pu_rx, r);
            return area;
        }
        const auto& disk = std::get<Disk>(region_.shape);
        return detail::lens_area(r, disk.radius, disk_offset_);
    }

    /// F_R(r) from the exact disk/region intersection area.
    [[nodiscard]] double cdf(double r) const
    {
        if (!(r > epsilon_))
            return 0.0;
        if (r >= r_max_)
            return 1.0;
        const double inner = std::numbers::pi * epsilon_ * epsilon_;
        return std::clamp((disk_intersection_area(r) - inner) / area_prime_, 0.0, 1.0);
    }

    /// Integral of r^n f_R(r) over [lower, upper], split at every breakpoint.
    [[nodiscard]] double partial_moment(double n, double lower, double upper,
                                        const QuadratureOptions& options = {}) const
    {
        const double tol = detail::kBreakpointSnap * std::max(1.0, r_max_);
        if (!(lower >= epsilon_ - tol && upper <= r_max_ + tol && lower <= upper))
            throw DomainError("partial_moment: need epsilon <= lower <= upper <= r_max");
        lower = std::max(lower, epsilon_);
        upper = std::min(upper, r_max_);
        return integrate([&](double r) { return std::pow(r, n) * pdf(r); }, lower, upper,
                         breakpoints(), options)
            .value;
    }

private:
    struct EdgeCut
    {
        double distance;
        double normal_angle;
    };

    [[nodiscard]] double raw_angular_measure(double r) const
    {
        if (std::holds_alternative<Disk>(region_.shape)) {
            const auto& disk = std::get<Disk>(region_.shape);
            if (r <= disk.radius - disk_offset_ + detail::kBreakpointSnap)
                return detail::kTwoPi;
            if (r >= disk.radius + disk_offset_)
                return 0.0;
            const double c = (r * r + disk_offset_ * disk_offset_ - disk.radius * disk.radius) /
                             (2.0 * r * disk_offset_);
            return 2.0 * std::acos(std::clamp(c, -1.0, 1.0));
        }
        std::vector<std::pair<double, double>> arcs;
        arcs.reserve(edges_.size());
        for (const auto& e : edges_) {
            // Within the snap distance below r the edge is treated as not yet cutting.
            if (e.distance >= r - detail::kBreakpointSnap)
                continue;
            arcs.emplace_back(e.normal_angle, std::acos(e.distance / r));
        }
        return std::clamp(detail::kTwoPi - detail::union_of_arcs(arcs), 0.0, detail::kTwoPi);
    }

    NetworkRegion region_;
    std::vector<EdgeCut> edges_;
    std::vector<double> breakpoints_;
    double disk_offset_ = 0.0;
    double epsilon_ = 0.0;
    double r_max_ = 0.0;
    double area_ = 0.0;
    double area_prime_ = 0.0;
};

inline double angular_measure(const DistanceProfile& profile, double r) { return profile.angular_measure(r); }
inline double pdf_distance(const DistanceProfile& profile, double r) { return profile.pdf(r); }
inline double cdf_distance(const DistanceProfile& profile, double r) { return profile.cdf(r); }
inline double partial_moment_distance(const DistanceProfile& profile, double n, double lower, double upper)
{
    return profile.partial_moment(n, lower, upper);
}

/// Uniform points on A' by bounding-box rejection.
class RegionSampler
{
public:
    explicit RegionSampler(const NetworkRegion& region)
        : region_(region), eps2_(region.epsilon * region.epsilon)
    {
        if (const auto* poly = std::get_if<ConvexPolygon>(&region_.shape)) {
            lo_ = hi_ = poly->vertex(0);
            for (const auto& v : poly->vertices()) {
                lo_ = {std::min(lo_.x, v.x), std::min(lo_.y, v.y)};
                hi_ = {std::max(hi_.x, v.x), std::max(hi_.y, v.y)};
            }
            for (std::size_t i = 0; i < poly->size(); ++i) {
                const Point a = poly->vertex(i);
                const Point e = poly->vertex(i + 1) - a;
                half_planes_.push_back({a, e});
            }
        } else {
            const auto& disk = std::get<Disk>(region_.shape);
            lo_ = {disk.center.x - disk.radius, disk.center.y - disk.radius};
            hi_ = {disk.center.x + disk.radius, disk.center.y + disk.radius};
        }
    }

    [[nodiscard]] bool accepts(Point q) const
    {
        const Point rel = q - region_.pu_rx;
        if (!(dot(rel, rel) > eps2_))
            return false;
        if (std::holds_alternative<Disk>(region_.shape)) {
            const auto& disk = std::get<Disk>(region_.shape);
            const Point c = q - disk.center;
            return dot(c, c) <= disk.radius * disk.radius;
        }
        for (const auto& hp : half_planes_)
            if (cross(hp.direction, q - hp.origin) < 0.0)
                return false;
        return true;
    }

    template <class Rng>
    Point operator()(Rng& rng) const
    {
        std::uniform_real_distribution<double> ux(lo_.x, hi_.x);
        std::uniform_real_distribution<double> uy(lo_.y, hi_.y);
        for (;;) {
            const Point q{ux(rng), uy(rng)};
            if (accepts(q))
                return q;
        }
    }

    [[nodiscard]] Point box_min() const noexcept { return lo_; }
    [[nodiscard]] Point box_max() const noexcept { return hi_; }

private:
    struct HalfPlane
    {
        Point origin;
        Point direction;
    };

    NetworkRegion region_;
    double eps2_;
    Point lo_{};
    Point hi_{};
    std::vector<HalfPlane> half_planes_;
};

template <class Rng>
Point sample_uniform(const NetworkRegion& region, Rng& rng)
{
    return RegionSampler(region)(rng);
}

} // namespace cognet

#endif // COGNET_GEOMETRY_HPP
