#pragma once

// Named parameter grids for the figures the artifact reproduces. Common
// constants: n = 1000 users, R_max = 300 Mbps, N_max = 200, W_max = 50
// packets of 1000 bytes, RTT = 100 ms. The per-curve p set {0.01, 0.02,
// 0.03, 0.04} is inferred from the figure legends, and the r_t axis uses
// 0.1 Mbps steps from 0.1 to 10 Mbps (the exact sampling is not specified).

#include <map>
#include <string>
#include <vector>

#include "bsplanner/errors.hpp"
#include "bsplanner/sweep.hpp"
#include "bsplanner/units.hpp"

namespace bsplanner::presets {

// Four-point file mixtures: 8 KB document, 1 MB image, 3 MB mp3, 20 MB video.
inline const std::map<std::string, FileSizeDistribution>& mixtures() {
    using units::kilobytes;
    using units::megabytes;
    static const std::map<std::string, FileSizeDistribution> m = {
        {"mix32",  // mu_f = 3.2024 MB
         FileSizeDistribution{{{kilobytes(8), 0.3},
                               {megabytes(1), 0.3},
                               {megabytes(3), 0.3},
                               {megabytes(20), 0.1}}}},
        {"mix508",  // mu_f = 5.08208 MB
         FileSizeDistribution{{{kilobytes(8), 0.26},
                               {megabytes(1), 0.27},
                               {megabytes(3), 0.27},
                               {megabytes(20), 0.2}}}},
    };
    return m;
}

inline std::vector<double> default_rt_axis(double step_mbps = 0.1) {
    std::vector<double> axis;
    const int steps = static_cast<int>(10.0 / step_mbps + 0.5);
    for (int i = 1; i <= steps; ++i) axis.push_back(units::mbps(step_mbps) * i);
    return axis;
}

inline const std::vector<double>& default_p_axis() {
    static const std::vector<double> axis = {0.01, 0.02, 0.03, 0.04};
    return axis;
}

inline SweepSpec base_spec(const std::string& mixture_id) {
    SweepSpec spec;
    spec.base_scenario.n = 1000;
    spec.base_scenario.p = 0.03;
    spec.base_scenario.files = mixtures().at(mixture_id);
    spec.base_scenario.r_t = units::mbps(1);
    spec.base_scenario.r_max = units::mbps(300);
    spec.base_scenario.n_max = 200;
    spec.base_protocol = ProtocolConfig{};  // ideal transport, RTT = SRTT = 100 ms
    spec.base_mixture_id = mixture_id;
    spec.mixtures = mixtures();
    spec.axes.p = default_p_axis();
    spec.axes.r_t = default_rt_axis();
    return spec;
}

inline const std::vector<std::string>& names() {
    static const std::vector<std::string> list = {
        "fig3a", "fig3b", "fig4a", "fig4b", "fig5",  "fig5a", "fig5b", "fig5c",
        "fig5d", "fig6",  "fig6a", "fig6b", "fig6c", "fig6d",
    };
    return list;
}

inline SweepSpec make(const std::string& name) {
    // fig3: analytic best case (r_g = r_t), one preset per mixture.
    if (name == "fig3a" || name == "fig3b")
        return base_spec(name == "fig3a" ? "mix32" : "mix508");

    // fig4: Monte Carlo counterpart of fig3.
    if (name == "fig4a" || name == "fig4b") {
        SweepSpec spec = base_spec(name == "fig4a" ? "mix32" : "mix508");
        spec.mode = SweepMode::MonteCarlo;
        spec.sim = SimConfig{1000.0, 0.1, 100, 1};
        return spec;
    }

    // fig5/fig6: TCP vs TCP/NC under loss; letters select one p_p value.
    const auto lossy = [](const std::string& mixture_id,
                          std::vector<double> pp_axis) {
        SweepSpec spec = base_spec(mixture_id);
        spec.base_protocol.kind = ProtocolKind::Tcp;
        spec.axes.protocol_kind = {ProtocolKind::TcpNc, ProtocolKind::Tcp};
        spec.axes.p_p = std::move(pp_axis);
        return spec;
    };
    if (name == "fig5") return lossy("mix32", {0.0, 0.01, 0.02, 0.05});
    if (name == "fig5a") return lossy("mix32", {0.0});
    if (name == "fig5b") return lossy("mix32", {0.01});
    if (name == "fig5c") return lossy("mix32", {0.02});
    if (name == "fig5d") return lossy("mix32", {0.05});
    if (name == "fig6") return lossy("mix508", {0.0, 0.01, 0.02, 0.03});
    if (name == "fig6a") return lossy("mix508", {0.0});
    if (name == "fig6b") return lossy("mix508", {0.01});
    if (name == "fig6c") return lossy("mix508", {0.02});
    if (name == "fig6d") return lossy("mix508", {0.03});

    throw invalid_parameter("unknown preset '" + name + "'; available: " + [] {
        std::string all;
        for (const auto& n : names()) {
            if (!all.empty()) all += ", ";
            all += n;
        }
        return all;
    }());
}

}  // namespace bsplanner::presets
