// cognet: analysis, simulation and tradeoff sweeps for underlay cognitive
// networks described by a YAML scenario file.
//
// Exit codes: 0 success, 1 runtime failure, 2 usage or validation error.

#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/core.h>
#include <fmt/format.h>
#include <json.hpp>

#include "cognet/cognet.hpp"
#include "cognet/scenario_io.hpp"

namespace {

using namespace cognet;

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

enum class Format { table, csv, json_lines };

struct CommonArgs
{
    std::string scenario_path;
    std::vector<std::string> protocols;
    std::optional<double> r_f;
    std::optional<double> gamma;
    std::optional<double> r_c;
    std::optional<int> m_sus;
    std::string format = "table";
};

Format parse_format(const std::string& f)
{
    if (f == "table")
        return Format::table;
    if (f == "csv")
        return Format::csv;
    return Format::json_lines;
}

std::string protocol_parameters(const Protocol& p)
{
    if (const auto* g = std::get_if<GuardZone>(&p))
        return fmt::format("r_f={:g}", g->r_f);
    if (const auto* t = std::get_if<Threshold>(&p))
        return fmt::format("gamma={:g}", t->gamma);
    if (const auto* c = std::get_if<Cooperation>(&p))
        return fmt::format("gamma={:g} r_c={:g}", c->gamma, c->r_c);
    return "-";
}

ScenarioFile load(const CommonArgs& args)
{
    auto file = load_scenario_file(args.scenario_path);
    if (args.m_sus)
        file.scenario.m_sus = *args.m_sus;
    return file;
}

const Protocol* find_in_file(const ScenarioFile& file, const std::string& name)
{
    for (const auto& p : file.protocols)
        if (protocol_name(p) == name)
            return &p;
    return nullptr;
}

// Protocols selected on the command line, falling back to the file.
std::vector<Protocol> select_protocols(const ScenarioFile& file, const CommonArgs& args)
{
    if (args.protocols.empty()) {
        if (file.protocols.empty())
            throw UsageError("no protocols in the scenario file; pass --protocol");
        return file.protocols;
    }
    std::vector<Protocol> out;
    for (const auto& name : args.protocols) {
        const Protocol* from_file = find_in_file(file, name);
        if (name == "full") {
            out.emplace_back(FullActivity{});
        } else if (name == "guard") {
            if (args.r_f)
                out.emplace_back(GuardZone{*args.r_f});
            else if (from_file)
                out.push_back(*from_file);
            else
                throw UsageError("guard protocol needs --r-f (none in the scenario file)");
        } else if (name == "threshold") {
            if (args.gamma)
                out.emplace_back(Threshold{*args.gamma});
            else if (from_file)
                out.push_back(*from_file);
            else
                throw UsageError("threshold protocol needs --gamma (none in the scenario file)");
        } else {
            const auto* c = from_file ? &std::get<Cooperation>(*from_file) : nullptr;
            const std::optional<double> g = args.gamma ? args.gamma : (c ? std::optional(c->gamma) : std::nullopt);
            const std::optional<double> rc = args.r_c ? args.r_c : (c ? std::optional(c->r_c) : std::nullopt);
            if (!g || !rc)
                throw UsageError("coop protocol needs --gamma and --r-c (or a coop entry in the scenario file)");
            out.emplace_back(Cooperation{*g, *rc});
        }
    }
    return out;
}

void add_common(CLI::App* cmd, CommonArgs& args, bool with_protocols)
{
    cmd->add_option("scenario", args.scenario_path, "Scenario file (YAML)")->required();
    if (with_protocols) {
        cmd->add_option("-p,--protocol", args.protocols, "Protocol(s): full, guard, threshold, coop")
            ->check(CLI::IsMember({"full", "guard", "threshold", "coop"}));
        cmd->add_option("--r-f", args.r_f, "Guard-zone radius (overrides the file)");
        cmd->add_option("--gamma", args.gamma, "Activation threshold, linear (overrides the file)");
        cmd->add_option("--r-c", args.r_c, "Cooperation range (overrides the file)");
        cmd->add_option("--format", args.format, "Output format")
            ->check(CLI::IsMember({"table", "csv", "json-lines"}));
    }
    cmd->add_option("--m-sus", args.m_sus, "Override the number of SUs")->check(CLI::PositiveNumber);
}

// ---------------------------------------------------------------- analyze

struct AnalyzeRow
{
    std::string protocol;
    std::string parameters;
    std::vector<double> mu;       // single-SU moments 1..3
    std::vector<double> kappa;    // aggregate cumulants 1..3
    std::vector<double> moments;  // aggregate raw moments 1..3
    double outage = 0.0;
    double mean_active = 0.0;
};

AnalyzeRow analyze_one(const ValidatedScenario& vs, const Protocol& p,
                       const std::shared_ptr<const DistanceProfile>& profile)
{
    const InterferenceKernel kernel(vs, p, profile);
    const auto cs = cumulants(kernel, 3);
    return {protocol_name(p), protocol_parameters(p), cs.single_moments, cs.values, aggregate_moments(cs),
            outage_probability(kernel), mean_active(kernel)};
}

int cmd_analyze(const CommonArgs& args)
{
    const auto file = load(args);
    const auto vs = validate(file.scenario);
    const auto protocols = select_protocols(file, args);
    for (const auto& p : protocols)
        validate_protocol(vs, p);
    const auto profile = std::make_shared<const DistanceProfile>(vs.region());

    std::vector<AnalyzeRow> rows;
    for (const auto& p : protocols)
        rows.push_back(analyze_one(vs, p, profile));

    const Format fmt_kind = parse_format(args.format);
    if (fmt_kind == Format::table) {
        fmt::print("M = {}, |A'| = {:.6g} m^2, r_max = {:.6g} m\n", vs.m_sus(), vs.area_prime(), vs.r_max());
        fmt::print("{:<10} {:<22} {:>12} {:>12} {:>12} {:>12} {:>12}\n", "protocol", "parameters", "E[I]",
                   "E[I^2]", "E[I^3]", "P_out", "mean_active");
        for (const auto& r : rows)
            fmt::print("{:<10} {:<22} {:>12.4e} {:>12.4e} {:>12.4e} {:>12.4e} {:>12.4f}\n", r.protocol,
                       r.parameters, r.moments[0], r.moments[1], r.moments[2], r.outage, r.mean_active);
        fmt::print("\nsingle-SU moments and aggregate cumulants\n");
        fmt::print("{:<10} {:>12} {:>12} {:>12} {:>12} {:>12} {:>12}\n", "protocol", "mu_I(1)", "mu_I(2)",
                   "mu_I(3)", "kappa(1)", "kappa(2)", "kappa(3)");
        for (const auto& r : rows)
            fmt::print("{:<10} {:>12.4e} {:>12.4e} {:>12.4e} {:>12.4e} {:>12.4e} {:>12.4e}\n", r.protocol, r.mu[0],
                       r.mu[1], r.mu[2], r.kappa[0], r.kappa[1], r.kappa[2]);
    } else if (fmt_kind == Format::csv) {
        fmt::print("protocol,parameters,mu1,mu2,mu3,kappa1,kappa2,kappa3,moment1,moment2,moment3,pout,mean_active\n");
        for (const auto& r : rows)
            fmt::print("{},{},{:.10e},{:.10e},{:.10e},{:.10e},{:.10e},{:.10e},{:.10e},{:.10e},{:.10e},{:.10e},{:.10e}\n",
                       r.protocol, r.parameters, r.mu[0], r.mu[1], r.mu[2], r.kappa[0], r.kappa[1], r.kappa[2],
                       r.moments[0], r.moments[1], r.moments[2], r.outage, r.mean_active);
    } else {
        for (const auto& r : rows) {
            nlohmann::ordered_json j;
            j["protocol"] = r.protocol;
            j["parameters"] = r.parameters;
            j["mu"] = r.mu;
            j["kappa"] = r.kappa;
            j["moments"] = r.moments;
            j["pout"] = r.outage;
            j["mean_active"] = r.mean_active;
            fmt::print("{}\n", j.dump());
        }
    }
    return kExitOk;
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs
{
    std::int64_t trials = 100000;
    std::uint64_t seed = 1;
    unsigned threads = 0;
    std::string dump;
};

int cmd_simulate(const CommonArgs& args, const SimulateArgs& sim)
{
    if (sim.trials < 1)
        throw UsageError("--trials must be at least 1");
    const auto file = load(args);
    const auto vs = validate(file.scenario);
    const auto protocols = select_protocols(file, args);
    for (const auto& p : protocols)
        validate_protocol(vs, p);
    if (!sim.dump.empty() && protocols.size() != 1)
        throw UsageError("--dump needs exactly one protocol");
    const auto profile = std::make_shared<const DistanceProfile>(vs.region());

    struct Line
    {
        std::string protocol;
        std::string metric;
        double analytic;
        McEstimate mc;
    };
    std::vector<Line> lines;
    for (const auto& p : protocols) {
        const auto row = analyze_one(vs, p, profile);
        const auto cs = cumulants(InterferenceKernel(vs, p, profile), 3);
        McOptions opt;
        opt.trials = static_cast<std::uint64_t>(sim.trials);
        opt.seed = sim.seed;
        opt.threads = sim.threads;
        opt.keep_records = !sim.dump.empty();
        const auto rep = run(vs, p, opt);
        const auto name = protocol_name(p);
        lines.push_back({name, "moment1", row.moments[0], rep.aggregate_moments[0]});
        lines.push_back({name, "moment2", row.moments[1], rep.aggregate_moments[1]});
        lines.push_back({name, "moment3", row.moments[2], rep.aggregate_moments[2]});
        lines.push_back({name, "variance", cs.values[1], rep.variance});
        lines.push_back({name, "third_central", cs.values[2], rep.third_central});
        lines.push_back({name, "pout", row.outage, rep.outage});
        lines.push_back({name, "pout_indicator", row.outage, rep.outage_indicator});
        lines.push_back({name, "mean_active", row.mean_active, rep.mean_active});
        if (!sim.dump.empty()) {
            std::ofstream out(sim.dump);
            if (!out)
                throw std::runtime_error("cannot write dump file '" + sim.dump + "'");
            write_records_csv(out, rep.records);
        }
    }

    const Format fmt_kind = parse_format(args.format);
    if (fmt_kind == Format::table) {
        fmt::print("M = {}, trials = {}, seed = {}\n", vs.m_sus(), sim.trials, sim.seed);
        fmt::print("{:<10} {:<15} {:>14} {:>14} {:>12} {:>8}\n", "protocol", "metric", "analytic", "monte_carlo",
                   "std_error", "z");
        for (const auto& l : lines)
            fmt::print("{:<10} {:<15} {:>14.6e} {:>14.6e} {:>12.3e} {:>8.2f}\n", l.protocol, l.metric, l.analytic,
                       l.mc.value, l.mc.std_error, l.mc.z_score(l.analytic));
    } else if (fmt_kind == Format::csv) {
        fmt::print("protocol,metric,analytic,monte_carlo,std_error,z,trials\n");
        for (const auto& l : lines)
            fmt::print("{},{},{:.10e},{:.10e},{:.10e},{:.4f},{}\n", l.protocol, l.metric, l.analytic, l.mc.value,
                       l.mc.std_error, l.mc.z_score(l.analytic), l.mc.trials);
    } else {
        for (const auto& l : lines) {
            nlohmann::ordered_json j;
            j["protocol"] = l.protocol;
            j["metric"] = l.metric;
            j["analytic"] = l.analytic;
            j["monte_carlo"] = l.mc.value;
            j["std_error"] = l.mc.std_error;
            j["z"] = l.mc.z_score(l.analytic);
            j["trials"] = l.mc.trials;
            fmt::print("{}\n", j.dump());
        }
    }
    return kExitOk;
}

// ---------------------------------------------------------------- tradeoff

struct TradeoffArgs
{
    std::vector<std::string> families{"guard", "threshold", "coop"};
    std::vector<double> grid;
    std::string out;
    double tol = 1e-6;
    unsigned threads = 0;
};

int cmd_tradeoff(const CommonArgs& args, const TradeoffArgs& t)
{
    if (t.grid.empty())
        throw UsageError("--pout-grid needs at least one value");
    for (double g : t.grid)
        if (!(g > 0.0 && g < 1.0))
            throw UsageError("--pout-grid values must lie in (0, 1)");
    const auto file = load(args);
    const auto vs = validate(file.scenario);

    std::vector<ProtocolFamily> families;
    for (const auto& f : t.families) {
        if (f == "guard") {
            families.emplace_back(GuardFamily{});
        } else if (f == "threshold") {
            families.emplace_back(ThresholdFamily{});
        } else {
            double rc = 0.0;
            if (args.r_c)
                rc = *args.r_c;
            else if (const auto* p = find_in_file(file, "coop"))
                rc = std::get<Cooperation>(*p).r_c;
            else
                throw UsageError("coop family needs --r-c (none in the scenario file)");
            families.emplace_back(CooperationFamily{rc});
            validate_protocol(vs, Cooperation{1.0, rc});
        }
    }

    std::ostringstream os;
    os << "protocol,target_pout,solved_parameter,mean_active\n";
    const auto profile = std::make_shared<const DistanceProfile>(vs.region());
    InversionOptions opt;
    opt.tol = t.tol;
    for (const auto& fam : families) {
        for (const auto& pt : tradeoff_curve(vs, fam, t.grid, opt, t.threads, profile)) {
            if (pt.ok)
                os << fmt::format("{},{:.6g},{:.10e},{:.6f}\n", pt.family, pt.target, pt.parameter, pt.mean_active);
            else
                os << fmt::format("# {},{:.6g},gap: {}\n", pt.family, pt.target, pt.error);
        }
    }
    if (t.out.empty()) {
        fmt::print("{}", os.str());
    } else {
        std::ofstream out(t.out);
        if (!out)
            throw std::runtime_error("cannot write '" + t.out + "'");
        out << os.str();
    }
    return kExitOk;
}

// ---------------------------------------------------------------- profile

int cmd_profile(const CommonArgs& args, int points)
{
    if (points < 2)
        throw UsageError("--points must be at least 2");
    const auto file = load(args);
    const auto vs = validate(file.scenario);
    const DistanceProfile profile(vs.region());
    fmt::print("r,angular_measure,pdf,cdf\n");
    const double lo = profile.epsilon();
    const double hi = profile.r_max();
    for (int i = 0; i < points; ++i) {
        const double r = lo + (hi - lo) * i / (points - 1);
        fmt::print("{:.10e},{:.10e},{:.10e},{:.10e}\n", r, profile.angular_measure(r), profile.pdf(r),
                   profile.cdf(r));
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Interference, outage and active-SU analysis for underlay cognitive networks"};
    app.require_subcommand(1);

    CommonArgs analyze_args;
    auto* analyze = app.add_subcommand("analyze", "Analytic moments, cumulants, outage and mean active SUs");
    add_common(analyze, analyze_args, true);

    CommonArgs sim_common;
    SimulateArgs sim_args;
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimates next to analytic values");
    add_common(simulate, sim_common, true);
    simulate->add_option("--trials", sim_args.trials, "Number of trials");
    simulate->add_option("--seed", sim_args.seed, "64-bit seed");
    simulate->add_option("--threads", sim_args.threads, "Worker threads (0: all cores)");
    simulate->add_option("--dump", sim_args.dump, "Write one CSV row per trial to this file");

    CommonArgs trade_common;
    TradeoffArgs trade_args;
    auto* tradeoff = app.add_subcommand("tradeoff", "Solve protocol parameters on an outage grid (CSV)");
    add_common(tradeoff, trade_common, false);
    tradeoff->add_option("--families", trade_args.families, "Families: guard, threshold, coop")
        ->delimiter(',')
        ->check(CLI::IsMember({"guard", "threshold", "coop"}));
    tradeoff->add_option("--pout-grid", trade_args.grid, "Target outage values")->delimiter(',');
    tradeoff->add_option("--r-c", trade_common.r_c, "Cooperation range for the coop family");
    tradeoff->add_option("--out", trade_args.out, "CSV output file (default: stdout)");
    tradeoff->add_option("--tol", trade_args.tol, "Outage tolerance")->check(CLI::PositiveNumber);
    tradeoff->add_option("--threads", trade_args.threads, "Worker threads (0: all cores)");

    CommonArgs prof_args;
    int points = 200;
    auto* profile = app.add_subcommand("profile", "Tabulate the distance distribution (CSV)");
    add_common(profile, prof_args, false);
    profile->add_option("--points", points, "Number of radii");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*analyze)
            return cmd_analyze(analyze_args);
        if (*simulate)
            return cmd_simulate(sim_common, sim_args);
        if (*tradeoff)
            return cmd_tradeoff(trade_common, trade_args);
        return cmd_profile(prof_args, points);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ValidationError& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
}
