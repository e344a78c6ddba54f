#ifndef COGNET_SCENARIO_IO_HPP
#define COGNET_SCENARIO_IO_HPP

// YAML scenario files. See docs/scenario_format.md for the schema.
// Requires yaml-cpp (target cognet_io).

#include <cmath>
#include <regex>
#include <set>
#include <string>
#include <vector>

#include <yaml-cpp/yaml.h>

#include "cognet/errors.hpp"
#include "cognet/model.hpp"

namespace cognet {

struct ScenarioFile
{
    Scenario scenario;
    std::vector<Protocol> protocols;
};

namespace io_detail {

inline void check_keys(const YAML::Node& node, const std::string& where, const std::set<std::string>& allowed)
{
    if (!node.IsMap())
        throw ValidationError(where + ": expected a mapping");
    for (const auto& kv : node) {
        const auto key = kv.first.as<std::string>();
        if (!allowed.count(key))
            throw ValidationError(where + ": unknown key '" + key + "'");
    }
}

/// Plain number, or a string "<value> dB" converted to linear.
inline double parse_level(const YAML::Node& node, const std::string& where)
{
    if (!node.IsScalar())
        throw ValidationError(where + ": expected a number");
    const auto text = node.as<std::string>();
    static const std::regex db(R"(^\s*([-+]?[0-9]*\.?[0-9]+(?:[eE][-+]?[0-9]+)?)\s*dB\s*$)");
    std::smatch m;
    if (std::regex_match(text, m, db))
        return std::pow(10.0, std::stod(m[1].str()) / 10.0);
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size())
            throw ValidationError(where + ": cannot parse '" + text + "' (use a number or '<value> dB')");
        return v;
    } catch (const std::logic_error&) {
        throw ValidationError(where + ": cannot parse '" + text + "' (use a number or '<value> dB')");
    }
}

inline double parse_number(const YAML::Node& node, const std::string& where)
{
    if (!node.IsScalar())
        throw ValidationError(where + ": expected a number");
    try {
        return node.as<double>();
    } catch (const YAML::Exception&) {
        throw ValidationError(where + ": cannot parse '" + node.as<std::string>() + "' as a number");
    }
}

inline Point parse_point(const YAML::Node& node, const std::string& where)
{
    if (!node.IsSequence() || node.size() != 2)
        throw ValidationError(where + ": expected [x, y]");
    return {parse_number(node[0], where + "[0]"), parse_number(node[1], where + "[1]")};
}

inline NetworkRegion parse_region(const YAML::Node& node)
{
    check_keys(node, "region", {"polygon", "regular_polygon", "disk", "pu_rx", "epsilon"});
    const int shapes = static_cast<int>(static_cast<bool>(node["polygon"])) +
                       static_cast<int>(static_cast<bool>(node["regular_polygon"])) +
                       static_cast<int>(static_cast<bool>(node["disk"]));
    if (shapes != 1)
        throw ValidationError("region: give exactly one of polygon, regular_polygon, disk");

    NetworkRegion region{Disk{}, {}, 1.0};
    if (const auto p = node["polygon"]) {
        if (!p.IsSequence())
            throw ValidationError("region.polygon: expected a list of [x, y] vertices");
        std::vector<Point> v;
        for (std::size_t i = 0; i < p.size(); ++i)
            v.push_back(parse_point(p[i], "region.polygon[" + std::to_string(i) + "]"));
        region.shape = ConvexPolygon::from_vertices(std::move(v));
    } else if (const auto rp = node["regular_polygon"]) {
        check_keys(rp, "region.regular_polygon", {"sides", "circumradius", "center", "rotation"});
        if (!rp["sides"] || !rp["circumradius"])
            throw ValidationError("region.regular_polygon: sides and circumradius are required");
        const double sides = parse_number(rp["sides"], "region.regular_polygon.sides");
        if (sides != std::floor(sides))
            throw ValidationError("region.regular_polygon.sides: must be an integer");
        const Point c = rp["center"] ? parse_point(rp["center"], "region.regular_polygon.center") : Point{};
        const double rot = rp["rotation"] ? parse_number(rp["rotation"], "region.regular_polygon.rotation") : 0.0;
        region.shape = make_regular_polygon(static_cast<int>(sides),
                                            parse_number(rp["circumradius"], "region.regular_polygon.circumradius"),
                                            c, rot);
    } else {
        const auto d = node["disk"];
        check_keys(d, "region.disk", {"center", "radius"});
        if (!d["radius"])
            throw ValidationError("region.disk: radius is required");
        Disk disk;
        disk.center = d["center"] ? parse_point(d["center"], "region.disk.center") : Point{};
        disk.radius = parse_number(d["radius"], "region.disk.radius");
        region.shape = disk;
    }
    if (!node["pu_rx"])
        throw ValidationError("region: pu_rx is required");
    region.pu_rx = parse_point(node["pu_rx"], "region.pu_rx");
    if (node["epsilon"])
        region.epsilon = parse_number(node["epsilon"], "region.epsilon");
    return region;
}

inline Protocol parse_protocol(const YAML::Node& node, const std::string& where)
{
    if (!node.IsMap() || !node["type"])
        throw ValidationError(where + ": expected a mapping with a 'type' key");
    const auto type = node["type"].as<std::string>();
    if (type == "full") {
        check_keys(node, where, {"type"});
        return FullActivity{};
    }
    if (type == "guard") {
        check_keys(node, where, {"type", "r_f"});
        if (!node["r_f"])
            throw ValidationError(where + ": guard protocol needs r_f");
        return GuardZone{parse_number(node["r_f"], where + ".r_f")};
    }
    if (type == "threshold") {
        check_keys(node, where, {"type", "gamma"});
        if (!node["gamma"])
            throw ValidationError(where + ": threshold protocol needs gamma");
        return Threshold{parse_level(node["gamma"], where + ".gamma")};
    }
    if (type == "coop") {
        check_keys(node, where, {"type", "gamma", "r_c"});
        if (!node["gamma"] || !node["r_c"])
            throw ValidationError(where + ": coop protocol needs gamma and r_c");
        return Cooperation{parse_level(node["gamma"], where + ".gamma"), parse_number(node["r_c"], where + ".r_c")};
    }
    throw ValidationError(where + ": unknown protocol type '" + type + "' (full, guard, threshold, coop)");
}

} // namespace io_detail

/// Parses a scenario document. Unknown keys are rejected; omitted scalar
/// parameters keep their defaults.
inline ScenarioFile parse_scenario(const YAML::Node& root)
{
    using namespace io_detail;
    check_keys(root, "scenario",
               {"region", "m_sus", "p_t0", "p_t", "p_ts", "r0", "alpha", "m0", "mg", "mh", "beta", "rho0",
                "protocols"});
    if (!root["region"])
        throw ValidationError("scenario: region is required");
    ScenarioFile file;
    auto& s = file.scenario;
    s.region = parse_region(root["region"]);
    if (root["m_sus"]) {
        const double m = parse_number(root["m_sus"], "m_sus");
        if (m != std::floor(m) || m < 1 || m > 1e7)
            throw ValidationError("m_sus: must be a positive integer");
        s.m_sus = static_cast<int>(m);
    }
    auto level = [&](const char* key, double& out) {
        if (root[key])
            out = parse_level(root[key], key);
    };
    auto number = [&](const char* key, double& out) {
        if (root[key])
            out = parse_number(root[key], key);
    };
    level("p_t0", s.p_t0);
    level("p_t", s.p_t);
    level("p_ts", s.p_ts);
    level("beta", s.beta);
    level("rho0", s.rho0);
    number("r0", s.r0);
    number("alpha", s.alpha);
    number("m0", s.m0);
    number("mg", s.mg);
    number("mh", s.mh);
    if (const auto ps = root["protocols"]) {
        if (!ps.IsSequence())
            throw ValidationError("protocols: expected a list");
        for (std::size_t i = 0; i < ps.size(); ++i)
            file.protocols.push_back(parse_protocol(ps[i], "protocols[" + std::to_string(i) + "]"));
    }
    return file;
}

inline ScenarioFile load_scenario_text(const std::string& text)
{
    try {
        return parse_scenario(YAML::Load(text));
    } catch (const YAML::Exception& e) {
        throw ValidationError(std::string("scenario file: ") + e.what());
    }
}

inline ScenarioFile load_scenario_file(const std::string& path)
{
    YAML::Node root;
    try {
        root = YAML::LoadFile(path);
    } catch (const YAML::BadFile&) {
        throw ValidationError("cannot open scenario file '" + path + "'");
    } catch (const YAML::Exception& e) {
        throw ValidationError("scenario file '" + path + "': " + e.what());
    }
    try {
        return parse_scenario(root);
    } catch (const YAML::Exception& e) {
        throw ValidationError("scenario file '" + path + "': " + e.what());
    }
}

} // namespace cognet

#endif // COGNET_SCENARIO_IO_HPP
