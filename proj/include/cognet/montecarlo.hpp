#ifndef COGNET_MONTECARLO_HPP
#define COGNET_MONTECARLO_HPP

// Direct simulation of the generative model: place M SUs, draw fading,
// apply the protocol's activation rule and accumulate the interference and
// outage statistics at the PU-Rx.
//
// Trials are grouped in fixed blocks. Every trial owns a generator keyed by
// (seed, trial), block statistics are merged in block order, so the report
// is bit-identical for any thread count.

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <random>
#include <thread>
#include <variant>
#include <vector>

#include "cognet/errors.hpp"
#include "cognet/fading.hpp"
#include "cognet/geometry.hpp"
#include "cognet/model.hpp"
#include "cognet/random.hpp"

namespace cognet {

struct McEstimate
{
    double value = 0.0;
    double std_error = 0.0;
    std::uint64_t trials = 0;

    /// (analytic - value) / std_error; 0 when both agree exactly.
    [[nodiscard]] double z_score(double analytic) const
    {
        const double diff = analytic - value;
        if (std_error > 0.0)
            return diff / std_error;
        return diff == 0.0 ? 0.0 : std::copysign(INFINITY, diff);
    }

    [[nodiscard]] bool within(double analytic, double sigmas = 3.0) const
    {
        return std::abs(z_score(analytic)) <= sigmas;
    }
};

struct TrialRecord
{
    double aggregate_interference = 0.0;
    int active_count = 0;
    int outage_indicator = 0;
    double outage_conditional = 0.0; ///< P(outage | I_agg)
};

/// Streaming mean/variance, mergeable (Welford / Chan).
class RunningStats
{
public:
    void add(double x)
    {
        ++n_;
        const double d = x - mean_;
        mean_ += d / static_cast<double>(n_);
        m2_ += d * (x - mean_);
    }

    void merge(const RunningStats& o)
    {
        if (o.n_ == 0)
            return;
        if (n_ == 0) {
            *this = o;
            return;
        }
        const double n = static_cast<double>(n_ + o.n_);
        const double d = o.mean_ - mean_;
        mean_ += d * static_cast<double>(o.n_) / n;
        m2_ += o.m2_ + d * d * static_cast<double>(n_) * static_cast<double>(o.n_) / n;
        n_ += o.n_;
    }

    [[nodiscard]] std::uint64_t count() const noexcept { return n_; }
    [[nodiscard]] double mean() const noexcept { return mean_; }
    [[nodiscard]] double variance() const noexcept { return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }

    [[nodiscard]] McEstimate estimate() const
    {
        return {mean_, n_ > 0 ? std::sqrt(variance() / static_cast<double>(n_)) : 0.0, n_};
    }

private:
    std::uint64_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

struct McOptions
{
    std::uint64_t trials = 100000;
    std::uint64_t seed = 1;
    unsigned threads = 0;       ///< 0: hardware concurrency
    bool keep_records = false;  ///< retain one TrialRecord per trial
};

struct McReport
{
    std::array<McEstimate, 3> aggregate_moments{}; ///< E[I_agg^n], n = 1..3
    McEstimate mean{};                             ///< E[I_agg]
    McEstimate variance{};                         ///< delta-method standard error
    McEstimate third_central{};                    ///< delta-method standard error
    std::array<McEstimate, 3> single_moments{};    ///< E[I^n] of one SU, n = 1..3
    McEstimate outage{};                           ///< conditional (variance-reduced) estimator
    McEstimate outage_indicator{};                 ///< plain indicator estimator
    McEstimate mean_active{};
    std::vector<TrialRecord> records;
};

inline constexpr std::uint64_t kMcBlockSize = 1024;

/// Per-trial simulator for one scenario and protocol.
class TrialSimulator
{
public:
    TrialSimulator(const ValidatedScenario& vs, const Protocol& protocol)
        : scenario_(vs), sampler_(vs.region()), m0_gain_(vs.m0())
    {
        validate_protocol(vs, protocol);
        const auto& s = vs.scenario();
        m_ = vs.m_sus();
        neg_half_alpha_ = -0.5 * s.alpha;
        noise_ = vs.noise_power();
        outage_scale_ = s.beta * std::pow(s.r0, s.alpha) / s.p_t0;
        if (const auto* g = std::get_if<GuardZone>(&protocol)) {
            kind_ = Kind::guard;
            r_f_ = g->r_f;
        } else if (const auto* t = std::get_if<Threshold>(&protocol)) {
            kind_ = Kind::threshold;
            gamma_ = t->gamma;
        } else if (const auto* c = std::get_if<Cooperation>(&protocol)) {
            kind_ = Kind::coop;
            gamma_ = c->gamma;
            r_c_ = c->r_c;
        }
    }

    struct Workspace
    {
        std::vector<Point> pos;
        std::vector<double> path; // r^-alpha
        std::vector<double> r;
        std::vector<double> h;
        std::vector<double> g;
        std::vector<char> initial;
        std::vector<char> active;
    };

    struct Outcome
    {
        TrialRecord record;
        std::array<double, 3> single_mean{}; ///< (1/M) sum_i I_i^n
    };

    Outcome run_trial(std::uint64_t seed, std::uint64_t trial, Workspace& w) const
    {
        const auto& s = scenario_.scenario();
        auto rng = trial_stream(seed, trial);
        const std::size_t m = static_cast<std::size_t>(m_);
        w.pos.resize(m);
        w.path.resize(m);
        w.r.resize(m);
        w.h.resize(m);
        w.g.resize(m);
        w.initial.assign(m, 1);
        w.active.assign(m, 1);

        const Point rx = scenario_.region().pu_rx;
        for (std::size_t i = 0; i < m; ++i) {
            w.pos[i] = sampler_(rng);
            const Point d = w.pos[i] - rx;
            const double r2 = dot(d, d);
            w.r[i] = std::sqrt(r2);
            w.path[i] = std::pow(r2, neg_half_alpha_);
        }
        std::gamma_distribution<double> hd(s.mh, 1.0 / s.mh);
        for (std::size_t i = 0; i < m; ++i)
            w.h[i] = hd(rng);
        std::gamma_distribution<double> gd(s.mg, 1.0 / s.mg);
        for (std::size_t i = 0; i < m; ++i)
            w.g[i] = gd(rng);
        const double g0 = m0_gain_.sample_power(rng);

        switch (kind_) {
        case Kind::full:
            break;
        case Kind::guard:
            for (std::size_t i = 0; i < m; ++i)
                w.active[i] = w.r[i] > r_f_;
            break;
        case Kind::threshold:
            for (std::size_t i = 0; i < m; ++i)
                w.active[i] = s.p_ts * w.h[i] * w.path[i] <= gamma_;
            break;
        case Kind::coop: {
            for (std::size_t i = 0; i < m; ++i)
                w.initial[i] = s.p_ts * w.h[i] * w.path[i] <= gamma_;
            w.active = w.initial;
            // A negative initial decision silences the SU and every SU within r_c.
            const double rc2 = r_c_ * r_c_;
            for (std::size_t i = 0; i < m; ++i) {
                if (w.initial[i])
                    continue;
                for (std::size_t j = 0; j < m; ++j) {
                    if (j == i)
                        continue;
                    const Point d = w.pos[j] - w.pos[i];
                    if (dot(d, d) <= rc2)
                        w.active[j] = 0;
                }
            }
            break;
        }
        }

        Outcome out;
        double agg = 0.0;
        int count = 0;
        for (std::size_t i = 0; i < m; ++i) {
            if (!w.active[i])
                continue;
            const double x = s.p_t * w.g[i] * w.path[i];
            agg += x;
            ++count;
            out.single_mean[0] += x;
            out.single_mean[1] += x * x;
            out.single_mean[2] += x * x * x;
        }
        for (double& v : out.single_mean)
            v /= static_cast<double>(m);

        out.record.aggregate_interference = agg;
        out.record.active_count = count;
        const double threshold = outage_scale_ * (noise_ + agg);
        out.record.outage_indicator = g0 < threshold ? 1 : 0;
        out.record.outage_conditional = m0_gain_.power_cdf(threshold);
        return out;
    }

private:
    enum class Kind { full, guard, threshold, coop };

    ValidatedScenario scenario_;
    RegionSampler sampler_;
    NakagamiPower m0_gain_;
    Kind kind_ = Kind::full;
    int m_ = 1;
    double neg_half_alpha_ = -1.25;
    double noise_ = 0.0;
    double outage_scale_ = 0.0;
    double r_f_ = 0.0;
    double gamma_ = 0.0;
    double r_c_ = 0.0;
};

namespace detail {

struct McAccumulator
{
    std::array<RunningStats, 6> power; // I_agg^k, k = 1..6
    std::array<RunningStats, 3> single;
    RunningStats outage;
    RunningStats indicator;
    RunningStats active;

    void add(const TrialSimulator::Outcome& o)
    {
        const double x = o.record.aggregate_interference;
        double p = 1.0;
        for (auto& st : power) {
            p *= x;
            st.add(p);
        }
        for (std::size_t k = 0; k < 3; ++k)
            single[k].add(o.single_mean[k]);
        outage.add(o.record.outage_conditional);
        indicator.add(o.record.outage_indicator);
        active.add(o.record.active_count);
    }

    void merge(const McAccumulator& o)
    {
        for (std::size_t k = 0; k < power.size(); ++k)
            power[k].merge(o.power[k]);
        for (std::size_t k = 0; k < 3; ++k)
            single[k].merge(o.single[k]);
        outage.merge(o.outage);
        indicator.merge(o.indicator);
        active.merge(o.active);
    }
};

// Central moments 2..6 from raw moments m[1..6].
inline std::array<double, 7> central_from_raw(const std::array<double, 7>& m)
{
    std::array<double, 7> c{};
    c[0] = 1.0;
    const double mu = m[1];
    for (int k = 2; k <= 6; ++k) {
        double v = 0.0;
        double binom = 1.0;
        for (int j = 0; j <= k; ++j) {
            if (j > 0)
                binom *= static_cast<double>(k - j + 1) / j;
            v += binom * m[k - j] * std::pow(-mu, j);
        }
        c[k] = v;
    }
    return c;
}

} // namespace detail

/// Runs the simulation. Deterministic in (scenario, protocol, trials, seed).
inline McReport run(const ValidatedScenario& vs, const Protocol& protocol, const McOptions& options)
{
    if (options.trials < 1)
        throw ValidationError("montecarlo: trials must be at least 1");
    const TrialSimulator sim(vs, protocol);
    const std::uint64_t blocks = (options.trials + kMcBlockSize - 1) / kMcBlockSize;
    std::vector<detail::McAccumulator> partial(blocks);
    McReport report;
    if (options.keep_records)
        report.records.resize(options.trials);

    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        TrialSimulator::Workspace w;
        for (;;) {
            const std::uint64_t b = next.fetch_add(1);
            if (b >= blocks)
                return;
            const std::uint64_t first = b * kMcBlockSize;
            const std::uint64_t last = std::min(options.trials, first + kMcBlockSize);
            for (std::uint64_t t = first; t < last; ++t) {
                const auto o = sim.run_trial(options.seed, t, w);
                partial[b].add(o);
                if (options.keep_records)
                    report.records[t] = o.record;
            }
        }
    };

    unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, blocks));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned i = 0; i < threads; ++i)
            pool.emplace_back(worker);
    }

    detail::McAccumulator total;
    for (const auto& p : partial)
        total.merge(p);

    for (std::size_t k = 0; k < 3; ++k) {
        report.aggregate_moments[k] = total.power[k].estimate();
        report.single_moments[k] = total.single[k].estimate();
    }
    report.mean = total.power[0].estimate();
    report.outage = total.outage.estimate();
    report.outage_indicator = total.indicator.estimate();
    report.mean_active = total.active.estimate();

    std::array<double, 7> raw{};
    raw[0] = 1.0;
    for (std::size_t k = 0; k < 6; ++k)
        raw[k + 1] = total.power[k].mean();
    const auto c = detail::central_from_raw(raw);
    const double n = static_cast<double>(options.trials);
    report.variance = {c[2], std::sqrt(std::max(0.0, c[4] - c[2] * c[2]) / n), options.trials};
    const double var3 = c[6] - c[3] * c[3] - 6.0 * c[4] * c[2] + 9.0 * c[2] * c[2] * c[2];
    report.third_central = {c[3], std::sqrt(std::max(0.0, var3) / n), options.trials};
    return report;
}

/// One CSV row per trial: trial, aggregate_interference, active_count,
/// outage_indicator, outage_conditional.
inline void write_records_csv(std::ostream& os, const std::vector<TrialRecord>& records)
{
    os << "trial,aggregate_interference,active_count,outage_indicator,outage_conditional\n";
    os.precision(17);
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        os << i << ',' << r.aggregate_interference << ',' << r.active_count << ',' << r.outage_indicator << ','
           << r.outage_conditional << '\n';
    }
}

} // namespace cognet

#endif // COGNET_MONTECARLO_HPP
