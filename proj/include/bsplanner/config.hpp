#pragma once

// JSON configuration layer for the CLI: parse documents with human-entry
// units (Mbps/MB/KB/ms), materialize all defaults, and emit a self-contained
// effective configuration (all SI base units) inside the run manifest so a
// run can be reproduced from the manifest alone.

#include <cmath>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bsplanner/errors.hpp"
#include "bsplanner/presets.hpp"
#include "bsplanner/sweep.hpp"
#include "bsplanner/units.hpp"

namespace bsplanner::config {

inline constexpr const char* kArtifactVersion = "0.1.0";

using json = nlohmann::ordered_json;

struct RunConfig {
    SweepSpec spec;
    std::string preset;  // empty when assembled from scratch
    std::string out_dir = ".";
    // Optional report multiplier: adds a power_kw column (n_bs ceiling times
    // this per-station draw) to analytic and sweep output.
    std::optional<double> power_kw_per_bs;
};

namespace detail {

inline double field_rate(const json& j, const std::string& field) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) return units::parse_rate(j.get<std::string>());
    throw invalid_parameter("field '" + field + "': expected a rate (number or unit string)");
}

inline double field_size(const json& j, const std::string& field) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) return units::parse_size(j.get<std::string>());
    throw invalid_parameter("field '" + field + "': expected a size (number or unit string)");
}

inline double field_time(const json& j, const std::string& field) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) return units::parse_time(j.get<std::string>());
    throw invalid_parameter("field '" + field + "': expected a time (number or unit string)");
}

inline double field_number(const json& j, const std::string& field) {
    if (!j.is_number()) throw invalid_parameter("field '" + field + "': expected a number");
    return j.get<double>();
}

inline FileSizeDistribution parse_entries(const json& j, const std::string& field) {
    if (!j.is_array()) throw invalid_parameter("field '" + field + "': expected an array of entries");
    std::vector<FileSizeDistribution::Entry> entries;
    for (const auto& e : j)
        entries.push_back({field_size(e.at("size"), field + ".size"),
                           field_number(e.at("prob"), field + ".prob")});
    return FileSizeDistribution{std::move(entries)};
}

inline json entries_to_json(const FileSizeDistribution& files) {
    json arr = json::array();
    for (const auto& e : files.entries()) arr.push_back({{"size", e.size_bits}, {"prob", e.prob}});
    return arr;
}

template <typename F>
std::vector<double> parse_axis(const json& j, const std::string& field, F&& convert) {
    if (!j.is_array()) throw invalid_parameter("axis '" + field + "': expected an array");
    if (j.empty()) throw invalid_parameter("axis '" + field + "': value list must be non-empty");
    std::vector<double> out;
    for (const auto& v : j) out.push_back(convert(v, field));
    return out;
}

}  // namespace detail

// Fully resolved configuration, SI base units throughout.
inline json to_json(const RunConfig& cfg) {
    const SweepSpec& s = cfg.spec;
    json j;
    if (!cfg.preset.empty()) j["preset"] = cfg.preset;
    j["scenario"] = {
        {"n", s.base_scenario.n},
        {"p", s.base_scenario.p},
        {"r_t", s.base_scenario.r_t},
        {"R_max", s.base_scenario.r_max},
        {"N_max", s.base_scenario.n_max},
        {"files", s.base_mixture_id},
    };
    j["protocol"] = {
        {"kind", to_string(s.base_protocol.kind)},
        {"w_max", s.base_protocol.w_max},
        {"packet_size", s.base_protocol.packet_size},
        {"rtt", s.base_protocol.rtt},
        // null means "track rtt", so overriding rtt alone keeps srtt = rtt
        {"srtt", s.base_protocol.srtt > s.base_protocol.rtt ? json(s.base_protocol.srtt) : json()},
        {"p_p", s.base_protocol.p_p},
        {"t_rtts", std::isfinite(s.base_protocol.t_rtts) ? json(s.base_protocol.t_rtts) : json()},
    };
    const SimConfig sim = s.sim.value_or(SimConfig{});
    j["sim"] = {
        {"horizon", sim.horizon},
        {"dt", sim.dt},
        {"iterations", sim.iterations},
        {"seed", sim.seed},
    };
    j["mode"] = to_string(s.mode);
    json axes = json::object();  // empty axes omitted: empty means "hold the base value"
    if (!s.axes.p.empty()) axes["p"] = s.axes.p;
    if (!s.axes.r_t.empty()) axes["r_t"] = s.axes.r_t;
    if (!s.axes.p_p.empty()) axes["p_p"] = s.axes.p_p;
    if (!s.axes.rtt.empty()) axes["rtt"] = s.axes.rtt;
    if (!s.axes.protocol_kind.empty()) {
        json kinds = json::array();
        for (auto k : s.axes.protocol_kind) kinds.push_back(to_string(k));
        axes["protocol_kind"] = kinds;
    }
    if (!s.axes.file_mixture_id.empty()) axes["file_mixture_id"] = s.axes.file_mixture_id;
    j["axes"] = axes;
    json mixtures;
    for (const auto& [id, files] : s.mixtures) mixtures[id] = detail::entries_to_json(files);
    j["mixtures"] = mixtures;
    if (cfg.power_kw_per_bs) j["report"] = {{"power_kw_per_bs", *cfg.power_kw_per_bs}};
    j["out_dir"] = cfg.out_dir;
    return j;
}

inline RunConfig parse_config(const json& j) {
    using namespace detail;
    RunConfig cfg;
    SweepSpec& s = cfg.spec;
    cfg.preset = j.value("preset", "");
    cfg.out_dir = j.value("out_dir", ".");

    // Named mixtures: built-ins plus any defined in the document.
    s.mixtures = presets::mixtures();
    if (j.contains("mixtures"))
        for (const auto& [id, entries] : j.at("mixtures").items())
            s.mixtures[id] = parse_entries(entries, "mixtures." + id);

    const json& sc = j.at("scenario");
    s.base_scenario.n = static_cast<long>(field_number(sc.at("n"), "scenario.n"));
    s.base_scenario.p = field_number(sc.at("p"), "scenario.p");
    s.base_scenario.r_t = field_rate(sc.at("r_t"), "scenario.r_t");
    s.base_scenario.r_max = field_rate(sc.at("R_max"), "scenario.R_max");
    s.base_scenario.n_max = static_cast<long>(field_number(sc.at("N_max"), "scenario.N_max"));
    const json& files = sc.at("files");
    if (files.is_string()) {
        s.base_mixture_id = files.get<std::string>();
        auto it = s.mixtures.find(s.base_mixture_id);
        if (it == s.mixtures.end())
            throw invalid_parameter("scenario.files: unknown mixture '" + s.base_mixture_id + "'");
        s.base_scenario.files = it->second;
    } else {
        s.base_mixture_id = "custom";
        s.base_scenario.files = parse_entries(files, "scenario.files");
        s.mixtures["custom"] = s.base_scenario.files;
    }

    const json& pr = j.at("protocol");
    s.base_protocol.kind = protocol_kind_from_string(pr.at("kind").get<std::string>());
    s.base_protocol.w_max = field_number(pr.at("w_max"), "protocol.w_max");
    s.base_protocol.packet_size = field_size(pr.at("packet_size"), "protocol.packet_size");
    s.base_protocol.rtt = field_time(pr.at("rtt"), "protocol.rtt");
    s.base_protocol.srtt = pr.contains("srtt") && !pr.at("srtt").is_null()
                               ? field_time(pr.at("srtt"), "protocol.srtt")
                               : s.base_protocol.rtt;
    s.base_protocol.p_p = field_number(pr.at("p_p"), "protocol.p_p");
    s.base_protocol.t_rtts = pr.contains("t_rtts") && !pr.at("t_rtts").is_null()
                                 ? field_number(pr.at("t_rtts"), "protocol.t_rtts")
                                 : kUnbounded;

    if (j.contains("sim") && !j.at("sim").is_null()) {
        const json& sim = j.at("sim");
        SimConfig sc2;
        sc2.horizon = field_time(sim.at("horizon"), "sim.horizon");
        sc2.dt = field_time(sim.at("dt"), "sim.dt");
        sc2.iterations = static_cast<int>(field_number(sim.at("iterations"), "sim.iterations"));
        sc2.seed = sim.at("seed").get<std::uint64_t>();
        s.sim = sc2;
    }

    s.mode = sweep_mode_from_string(j.value("mode", "analytic"));

    if (j.contains("axes")) {
        const json& ax = j.at("axes");
        if (ax.contains("p")) s.axes.p = parse_axis(ax.at("p"), "p", field_number);
        if (ax.contains("r_t")) s.axes.r_t = parse_axis(ax.at("r_t"), "r_t", field_rate);
        if (ax.contains("p_p")) s.axes.p_p = parse_axis(ax.at("p_p"), "p_p", field_number);
        if (ax.contains("rtt")) s.axes.rtt = parse_axis(ax.at("rtt"), "rtt", field_time);
        if (ax.contains("protocol_kind")) {
            const json& pk = ax.at("protocol_kind");
            if (!pk.is_array() || pk.empty())
                throw invalid_parameter("axis 'protocol_kind': value list must be non-empty");
            for (const auto& v : pk)
                s.axes.protocol_kind.push_back(protocol_kind_from_string(v.get<std::string>()));
        }
        if (ax.contains("file_mixture_id")) {
            const json& fm = ax.at("file_mixture_id");
            if (!fm.is_array() || fm.empty())
                throw invalid_parameter("axis 'file_mixture_id': value list must be non-empty");
            for (const auto& v : fm) s.axes.file_mixture_id.push_back(v.get<std::string>());
        }
    }

    if (j.contains("report") && j.at("report").contains("power_kw_per_bs") &&
        !j.at("report").at("power_kw_per_bs").is_null())
        cfg.power_kw_per_bs =
            field_number(j.at("report").at("power_kw_per_bs"), "report.power_kw_per_bs");

    cfg.spec.validate();
    return cfg;
}

inline RunConfig from_preset(const std::string& name) {
    RunConfig cfg;
    cfg.spec = presets::make(name);
    cfg.preset = name;
    return cfg;
}

// Reads a config document; a run manifest (recognized by its embedded
// "config" object) is unwrapped so re-running from a manifest reproduces the
// original run.
inline json load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invalid_parameter("cannot open config file '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw invalid_parameter("config file '" + path + "': " + e.what());
    }
    if (j.is_object() && j.contains("config") && j.contains("artifact_version"))
        return j.at("config");
    return j;
}

// Applies one "--set dotted.path=value" override onto the document. The value
// is parsed as JSON when possible, otherwise taken as a string.
inline void apply_override(json& doc, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos)
        throw invalid_parameter("--set expects key=value, got '" + assignment + "'");
    const std::string path = assignment.substr(0, eq);
    const std::string text = assignment.substr(eq + 1);

    json value;
    try {
        value = json::parse(text);
    } catch (const nlohmann::json::parse_error&) {
        value = text;
    }

    json* node = &doc;
    std::size_t begin = 0;
    while (true) {
        const auto dot = path.find('.', begin);
        const std::string key = path.substr(begin, dot == std::string::npos ? dot : dot - begin);
        if (key.empty()) throw invalid_parameter("--set: empty key segment in '" + path + "'");
        if (dot == std::string::npos) {
            (*node)[key] = value;
            break;
        }
        node = &(*node)[key];
        begin = dot + 1;
    }
}

inline json make_manifest(const RunConfig& cfg, const std::string& command) {
    json m;
    m["artifact_version"] = kArtifactVersion;
    m["command"] = command;
    m["master_seed"] = cfg.spec.sim ? cfg.spec.sim->seed : 0;
    m["out_dir"] = cfg.out_dir;
    m["config"] = to_json(cfg);
    return m;
}

}  // namespace bsplanner::config
