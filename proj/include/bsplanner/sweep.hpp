#pragma once

// Cartesian sweeps over (p, r_t, p_p, rtt, protocol, file mixture). Each grid
// point derives r_g from the protocol model, then evaluates the analytic
// capacity formula; Monte Carlo mode additionally runs the traffic simulator
// at that r_g.

#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bsplanner/capacity.hpp"
#include "bsplanner/errors.hpp"
#include "bsplanner/goodput.hpp"
#include "bsplanner/simulate.hpp"

namespace bsplanner {

enum class SweepMode { Analytic, MonteCarlo };

inline std::string to_string(SweepMode mode) {
    return mode == SweepMode::Analytic ? "analytic" : "montecarlo";
}

inline SweepMode sweep_mode_from_string(std::string_view s) {
    if (s == "analytic") return SweepMode::Analytic;
    if (s == "montecarlo") return SweepMode::MonteCarlo;
    throw invalid_parameter("unknown mode '" + std::string(s) + "' (expected analytic or montecarlo)");
}

// Axis lists; an empty list means "hold the base value". Grid order is the
// fixed lexicographic nesting p -> r_t -> p_p -> rtt -> protocol -> mixture.
struct SweepAxes {
    std::vector<double> p;
    std::vector<double> r_t;
    std::vector<double> p_p;
    std::vector<double> rtt;
    std::vector<ProtocolKind> protocol_kind;
    std::vector<std::string> file_mixture_id;
};

struct SweepSpec {
    ScenarioParams base_scenario;
    ProtocolConfig base_protocol;
    SweepAxes axes;
    SweepMode mode = SweepMode::Analytic;
    std::optional<SimConfig> sim;
    // Resolves file_mixture_id axis values; the base scenario's files are
    // used when that axis is empty.
    std::map<std::string, FileSizeDistribution> mixtures;
    std::string base_mixture_id = "base";

    void validate() const {
        base_scenario.validate();
        base_protocol.validate();
        if (mode == SweepMode::MonteCarlo) {
            if (!sim) throw invalid_parameter("montecarlo mode requires a sim config");
            sim->validate();
        }
        for (double v : axes.p)
            if (v < 0.0 || v > 1.0)
                throw invalid_parameter("axis p: value " + std::to_string(v) + " outside [0,1]");
        for (double v : axes.r_t)
            if (v <= 0.0) throw invalid_parameter("axis r_t: value " + std::to_string(v) + " must be positive");
        for (double v : axes.p_p)
            if (v < 0.0 || v >= 1.0)
                throw invalid_parameter("axis p_p: value " + std::to_string(v) + " outside [0,1)");
        for (double v : axes.rtt)
            if (v <= 0.0) throw invalid_parameter("axis rtt: value " + std::to_string(v) + " must be positive");
        for (const auto& id : axes.file_mixture_id)
            if (!mixtures.count(id))
                throw invalid_parameter("axis file_mixture_id: unknown mixture '" + id + "'");
    }
};

struct SweepRow {
    double p = 0.0;
    double r_t = 0.0;
    double p_p = 0.0;
    double rtt = 0.0;
    ProtocolKind protocol = ProtocolKind::Ideal;
    std::string mixture_id;
    SweepMode mode = SweepMode::Analytic;

    double r_g = 0.0;
    double activity = 0.0;
    double nbs_frac = 0.0;
    long nbs_ceil = 0;

    // Monte Carlo only.
    double mean_active_fraction = std::numeric_limits<double>::quiet_NaN();
    double nbs_required = std::numeric_limits<double>::quiet_NaN();
    double nbs_required_sd = std::numeric_limits<double>::quiet_NaN();
};

namespace detail {

template <typename T>
std::vector<T> axis_or(const std::vector<T>& axis, T base) {
    return axis.empty() ? std::vector<T>{base} : axis;
}

}  // namespace detail

inline std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
    spec.validate();

    const auto ps = detail::axis_or(spec.axes.p, spec.base_scenario.p);
    const auto rts = detail::axis_or(spec.axes.r_t, spec.base_scenario.r_t);
    const auto pps = detail::axis_or(spec.axes.p_p, spec.base_protocol.p_p);
    const auto rtts = detail::axis_or(spec.axes.rtt, spec.base_protocol.rtt);
    const auto protocols = detail::axis_or(spec.axes.protocol_kind, spec.base_protocol.kind);
    const auto mixtures = detail::axis_or(spec.axes.file_mixture_id, spec.base_mixture_id);

    std::vector<SweepRow> rows;
    rows.reserve(ps.size() * rts.size() * pps.size() * rtts.size() * protocols.size() * mixtures.size());

    for (double p : ps)
        for (double r_t : rts)
            for (double p_p : pps)
                for (double rtt : rtts)
                    for (ProtocolKind protocol : protocols)
                        for (const auto& mixture_id : mixtures) {
                            ScenarioParams scenario = spec.base_scenario;
                            scenario.p = p;
                            scenario.r_t = r_t;
                            if (!spec.axes.file_mixture_id.empty())
                                scenario.files = spec.mixtures.at(mixture_id);

                            ProtocolConfig protocol_cfg = spec.base_protocol;
                            protocol_cfg.kind = protocol;
                            protocol_cfg.p_p = p_p;
                            // Keep SRTT >= RTT when the RTT axis moves and the
                            // base left SRTT at its default of RTT.
                            if (protocol_cfg.srtt == protocol_cfg.rtt || protocol_cfg.srtt < rtt)
                                protocol_cfg.srtt = rtt;
                            protocol_cfg.rtt = rtt;

                            SweepRow row;
                            row.p = p;
                            row.r_t = r_t;
                            row.p_p = p_p;
                            row.rtt = rtt;
                            row.protocol = protocol;
                            row.mixture_id = mixture_id;
                            row.mode = spec.mode;
                            row.r_g = goodput(protocol_cfg, r_t);
                            row.activity = activity_probability(scenario.files, p, row.r_g);
                            row.nbs_frac = expected_base_stations(scenario, row.r_g);
                            row.nbs_ceil = required_base_stations(scenario, row.r_g);

                            if (spec.mode == SweepMode::MonteCarlo) {
                                const SimStats stats = run_simulation(scenario, *spec.sim, row.r_g);
                                row.mean_active_fraction = stats.mean_active_fraction;
                                row.nbs_required = stats.nbs_required;
                                double var = 0.0;
                                for (const auto& it : stats.per_iteration) {
                                    const double d =
                                        static_cast<double>(it.nbs_required) - stats.nbs_required;
                                    var += d * d;
                                }
                                const auto k = static_cast<double>(stats.per_iteration.size());
                                row.nbs_required_sd = k > 1 ? std::sqrt(var / (k - 1)) : 0.0;
                            }
                            rows.push_back(std::move(row));
                        }
    return rows;
}

struct ProtocolComparison {
    SweepRow tcp_nc;
    SweepRow tcp;
    double nbs_delta = 0.0;  // tcp - tcpnc, fractional
    double nbs_ratio = 1.0;  // tcp / tcpnc; 1 when both are zero
};

// Runs the sweep once per protocol (ignoring any protocol axis) and pairs the
// rows per grid point.
inline std::vector<ProtocolComparison> compare_protocols(const SweepSpec& spec) {
    SweepSpec nc_spec = spec;
    nc_spec.axes.protocol_kind = {ProtocolKind::TcpNc};
    SweepSpec tcp_spec = spec;
    tcp_spec.axes.protocol_kind = {ProtocolKind::Tcp};

    const auto nc_rows = run_sweep(nc_spec);
    const auto tcp_rows = run_sweep(tcp_spec);

    std::vector<ProtocolComparison> pairs;
    pairs.reserve(nc_rows.size());
    for (std::size_t i = 0; i < nc_rows.size(); ++i) {
        ProtocolComparison cmp;
        cmp.tcp_nc = nc_rows[i];
        cmp.tcp = tcp_rows[i];
        cmp.nbs_delta = cmp.tcp.nbs_frac - cmp.tcp_nc.nbs_frac;
        cmp.nbs_ratio = cmp.tcp_nc.nbs_frac > 0.0 ? cmp.tcp.nbs_frac / cmp.tcp_nc.nbs_frac : 1.0;
        pairs.push_back(std::move(cmp));
    }
    return pairs;
}

}  // namespace bsplanner
