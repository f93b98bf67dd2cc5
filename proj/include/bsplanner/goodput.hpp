#pragma once

// Protocol-dependent mapping from provisioned throughput r_t and packet loss
// rate p_p to the goodput r_g the user actually sees. Regardless of protocol,
// r_g <= r_t * (1 - p_p).

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <string_view>

#include "bsplanner/errors.hpp"

namespace bsplanner {

enum class ProtocolKind { Ideal, TcpNc, Tcp };

inline std::string to_string(ProtocolKind kind) {
    switch (kind) {
        case ProtocolKind::Ideal: return "ideal";
        case ProtocolKind::TcpNc: return "tcpnc";
        case ProtocolKind::Tcp: return "tcp";
    }
    return "?";
}

inline ProtocolKind protocol_kind_from_string(std::string_view s) {
    if (s == "ideal") return ProtocolKind::Ideal;
    if (s == "tcpnc") return ProtocolKind::TcpNc;
    if (s == "tcp") return ProtocolKind::Tcp;
    throw invalid_parameter("unknown protocol kind '" + std::string(s) + "' (expected ideal, tcpnc, or tcp)");
}

// Sentinel for "steady state" connection duration and for the Ideal
// protocol's unbounded window rate.
constexpr double kUnbounded = std::numeric_limits<double>::infinity();

struct ProtocolConfig {
    ProtocolKind kind = ProtocolKind::Ideal;
    double w_max = 50.0;          // maximum congestion window, packets
    double packet_size = 8000.0;  // payload per packet, bits (1000 bytes)
    double rtt = 0.1;             // seconds
    double srtt = 0.1;            // effective RTT seen by TCP/NC; >= rtt
    double p_p = 0.0;             // per-packet loss probability
    double t_rtts = kUnbounded;   // connection duration in RTTs; infinity = steady state

    void validate() const {
        if (w_max < 1.0) throw invalid_parameter("W_max must be at least 1 packet");
        if (packet_size <= 0.0) throw invalid_parameter("packet size must be positive");
        if (rtt <= 0.0) throw invalid_parameter("RTT must be positive");
        if (srtt < rtt) throw invalid_parameter("SRTT must not be smaller than RTT");
        if (p_p < 0.0 || p_p >= 1.0)
            throw invalid_parameter("p_p must lie in [0,1), got " + std::to_string(p_p));
        if (std::isfinite(t_rtts) && t_rtts < w_max)
            throw invalid_parameter("finite connection duration must be at least W_max RTTs");
    }
};

// Maximum rate imposed by the congestion window alone: W_max packets per
// (S)RTT. The Ideal protocol has no window and returns the unbounded sentinel.
inline double window_limited_rate(const ProtocolConfig& cfg) {
    cfg.validate();
    switch (cfg.kind) {
        case ProtocolKind::Ideal: return kUnbounded;
        case ProtocolKind::TcpNc: return cfg.w_max * cfg.packet_size / cfg.srtt;
        case ProtocolKind::Tcp: return cfg.w_max * cfg.packet_size / cfg.rtt;
    }
    return kUnbounded;
}

// TCP/NC goodput: window-governed rate over a connection of t RTTs, capped by
// r_t * (1 - p_p). Loss enters only through SRTT and the cap.
inline double goodput_tcp_nc(const ProtocolConfig& cfg, double r_t) {
    cfg.validate();
    if (cfg.kind != ProtocolKind::TcpNc) throw invalid_parameter("goodput_tcp_nc requires a tcpnc config");
    if (r_t <= 0.0) throw invalid_parameter("r_t must be positive");

    double raw_nc;
    if (std::isfinite(cfg.t_rtts)) {
        const double w1 = cfg.w_max - 1.0;
        const double packets = cfg.t_rtts * cfg.w_max - (w1 * w1 + w1) / 2.0;
        raw_nc = packets * cfg.packet_size / (cfg.t_rtts * cfg.srtt);
    } else {
        raw_nc = cfg.w_max * cfg.packet_size / cfg.srtt;
    }
    return std::min(raw_nc, r_t * (1.0 - cfg.p_p));
}

// TCP goodput: min of the window limit and the loss-governed steady-state
// rate, capped by r_t * (1 - p_p). At p_p = 0 only the window limit binds.
inline double goodput_tcp(const ProtocolConfig& cfg, double r_t) {
    cfg.validate();
    if (cfg.kind != ProtocolKind::Tcp) throw invalid_parameter("goodput_tcp requires a tcp config");
    if (r_t <= 0.0) throw invalid_parameter("r_t must be positive");

    double raw_tcp = cfg.w_max * cfg.packet_size / cfg.rtt;
    if (cfg.p_p > 0.0) {
        const double q = (1.0 - cfg.p_p) / cfg.p_p;
        const double loss_rate =
            q / (cfg.rtt * (5.0 / 3.0 + std::sqrt((2.0 / 3.0) * q))) * cfg.packet_size;
        raw_tcp = std::min(raw_tcp, loss_rate);
    }
    return std::min(raw_tcp, r_t * (1.0 - cfg.p_p));
}

// Dispatch on protocol kind. Ideal applies only the universal cap.
inline double goodput(const ProtocolConfig& cfg, double r_t) {
    cfg.validate();
    if (r_t <= 0.0) throw invalid_parameter("r_t must be positive");
    switch (cfg.kind) {
        case ProtocolKind::Ideal: return r_t * (1.0 - cfg.p_p);
        case ProtocolKind::TcpNc: return goodput_tcp_nc(cfg, r_t);
        case ProtocolKind::Tcp: return goodput_tcp(cfg, r_t);
    }
    return 0.0;
}

}  // namespace bsplanner
