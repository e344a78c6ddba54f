#ifndef COGNET_INVERSION_HPP
#define COGNET_INVERSION_HPP

// Solve a protocol parameter (r_f or gamma) for a target outage probability
// and trace the outage / mean-active tradeoff.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "cognet/errors.hpp"
#include "cognet/geometry.hpp"
#include "cognet/model.hpp"
#include "cognet/network_metrics.hpp"
#include "cognet/protocol_kernel.hpp"

namespace cognet {

struct GuardFamily
{};

struct ThresholdFamily
{};

/// Cooperation with a fixed range; gamma is solved.
struct CooperationFamily
{
    double r_c = 0.0;
};

using ProtocolFamily = std::variant<GuardFamily, ThresholdFamily, CooperationFamily>;

inline std::string family_name(const ProtocolFamily& f)
{
    if (std::holds_alternative<GuardFamily>(f))
        return "guard";
    if (std::holds_alternative<ThresholdFamily>(f))
        return "threshold";
    return "coop";
}

inline Protocol make_protocol(const ProtocolFamily& f, double parameter)
{
    if (std::holds_alternative<GuardFamily>(f))
        return GuardZone{parameter};
    if (std::holds_alternative<ThresholdFamily>(f))
        return Threshold{parameter};
    return Cooperation{parameter, std::get<CooperationFamily>(f).r_c};
}

struct InversionOptions
{
    double tol = 1e-6;            ///< |P_out - target|
    double bracket_rel = 1e-9;    ///< relative parameter bracket width
    int max_iterations = 400;
    double gamma_low = 1e-12;
    double gamma_high = 1e3;
};

struct SolveResult
{
    double parameter = 0.0;
    double outage = 0.0;
    int iterations = 0;
};

namespace detail {

inline double outage_at(const ValidatedScenario& vs, const Protocol& p,
                        const std::shared_ptr<const DistanceProfile>& profile)
{
    return outage_probability(InterferenceKernel(vs, p, profile));
}

inline std::string fmt_g(double v)
{
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

} // namespace detail

/// Outage with every SU active.
inline double full_activity_outage(const ValidatedScenario& vs,
                                   std::shared_ptr<const DistanceProfile> profile = nullptr)
{
    if (!profile)
        profile = std::make_shared<const DistanceProfile>(vs.region());
    return detail::outage_at(vs, FullActivity{}, profile);
}

/// Bisection on the monotone map parameter -> outage.
inline SolveResult solve_parameter(const ValidatedScenario& vs, const ProtocolFamily& family, double target,
                                   const InversionOptions& options = {},
                                   std::shared_ptr<const DistanceProfile> profile = nullptr)
{
    if (!(target > 0.0 && target < 1.0))
        throw InversionError("solve_parameter: target outage must lie in (0, 1)");
    if (!profile)
        profile = std::make_shared<const DistanceProfile>(vs.region());
    const double noise_only = noise_only_outage(vs);
    const double full = full_activity_outage(vs, profile);
    if (!(target > noise_only) || target > full + options.tol) {
        throw InversionError("solve_parameter: target " + detail::fmt_g(target) +
                             " is outside the achievable range (noise-only outage " + detail::fmt_g(noise_only) +
                             ", full-activity outage " + detail::fmt_g(full) + ")");
    }
    auto eval = [&](double x) { return detail::outage_at(vs, make_protocol(family, x), profile); };
    SolveResult res;

    if (std::holds_alternative<GuardFamily>(family)) {
        // Outage falls as r_f grows.
        double lo = vs.region().epsilon;
        double hi = vs.r_max();
        if (std::abs(full - target) <= options.tol)
            return {lo, full, 0};
        for (res.iterations = 1; res.iterations <= options.max_iterations; ++res.iterations) {
            const double mid = 0.5 * (lo + hi);
            const double p = eval(mid);
            res.parameter = mid;
            res.outage = p;
            if (std::abs(p - target) <= options.tol || hi - lo < options.bracket_rel * hi)
                return res;
            if (p > target)
                lo = mid;
            else
                hi = mid;
        }
        return res;
    }

    // Outage rises with gamma; bisect on log gamma.
    double lo = options.gamma_low;
    double hi = options.gamma_high;
    double p_lo = eval(lo);
    for (int k = 0; p_lo > target && k < 60; ++k) {
        lo *= 1e-3;
        p_lo = eval(lo);
    }
    double p_hi = eval(hi);
    for (int k = 0; p_hi < target && k < 60; ++k) {
        hi *= 1e3;
        p_hi = eval(hi);
    }
    if (std::abs(p_lo - target) <= options.tol)
        return {lo, p_lo, 0};
    if (std::abs(p_hi - target) <= options.tol)
        return {hi, p_hi, 0};
    if (!(p_lo < target && p_hi > target))
        throw InversionError("solve_parameter: gamma bracket [" + detail::fmt_g(lo) + ", " + detail::fmt_g(hi) +
                             "] does not straddle the target (outage " + detail::fmt_g(p_lo) + " .. " +
                             detail::fmt_g(p_hi) + ")");
    double llo = std::log(lo);
    double lhi = std::log(hi);
    for (res.iterations = 1; res.iterations <= options.max_iterations; ++res.iterations) {
        const double lmid = 0.5 * (llo + lhi);
        const double mid = std::exp(lmid);
        const double p = eval(mid);
        res.parameter = mid;
        res.outage = p;
        if (std::abs(p - target) <= options.tol || lhi - llo < options.bracket_rel)
            return res;
        if (p < target)
            llo = lmid;
        else
            lhi = lmid;
    }
    return res;
}

struct TradeoffPoint
{
    std::string family;
    double target = 0.0;
    bool ok = false;
    double parameter = 0.0;
    double outage = 0.0;
    double mean_active = 0.0;
    std::string error; ///< set when ok is false
};

/// Solves every grid point (in parallel) and reports mean_active at the
/// solution. Failed points are kept as gaps with their diagnostic.
inline std::vector<TradeoffPoint> tradeoff_curve(const ValidatedScenario& vs, const ProtocolFamily& family,
                                                 const std::vector<double>& grid,
                                                 const InversionOptions& options = {}, unsigned threads = 0,
                                                 std::shared_ptr<const DistanceProfile> profile = nullptr)
{
    if (!profile)
        profile = std::make_shared<const DistanceProfile>(vs.region());
    std::vector<TradeoffPoint> out(grid.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= grid.size())
                return;
            auto& pt = out[i];
            pt.family = family_name(family);
            pt.target = grid[i];
            try {
                const auto res = solve_parameter(vs, family, grid[i], options, profile);
                pt.parameter = res.parameter;
                pt.outage = res.outage;
                pt.mean_active = mean_active(InterferenceKernel(vs, make_protocol(family, res.parameter), profile));
                pt.ok = true;
            } catch (const std::exception& e) {
                pt.error = e.what();
            }
        }
    };
    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, grid.size())));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned i = 0; i < threads; ++i)
            pool.emplace_back(worker);
    }
    return out;
}

} // namespace cognet

#endif // COGNET_INVERSION_HPP
