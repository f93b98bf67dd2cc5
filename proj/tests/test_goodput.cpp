#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "bsplanner/goodput.hpp"
#include "bsplanner/units.hpp"

using namespace bsplanner;
using Catch::Matchers::WithinRel;
using units::mbps;

namespace {

ProtocolConfig paper_cfg(ProtocolKind kind, double p_p = 0.0, double rtt = 0.1) {
    ProtocolConfig cfg;
    cfg.kind = kind;
    cfg.w_max = 50.0;
    cfg.packet_size = 8000.0;
    cfg.rtt = rtt;
    cfg.srtt = rtt;
    cfg.p_p = p_p;
    return cfg;
}

}  // namespace

TEST_CASE("window limited rate") {
    CHECK(window_limited_rate(paper_cfg(ProtocolKind::Tcp)) == 4e6);
    CHECK(window_limited_rate(paper_cfg(ProtocolKind::Tcp, 0.0, 0.5)) == 8e5);
    CHECK(window_limited_rate(paper_cfg(ProtocolKind::TcpNc)) == 4e6);
    CHECK(window_limited_rate(paper_cfg(ProtocolKind::Ideal)) == kUnbounded);

    ProtocolConfig one = paper_cfg(ProtocolKind::Tcp);
    one.w_max = 1.0;
    one.rtt = one.srtt = 1.0;
    CHECK(window_limited_rate(one) == 8000.0);
}

TEST_CASE("tcp/nc goodput") {
    auto cfg = paper_cfg(ProtocolKind::TcpNc);
    CHECK(goodput_tcp_nc(cfg, mbps(10)) == 4e6);

    cfg.p_p = 0.1;
    CHECK_THAT(goodput_tcp_nc(cfg, mbps(2)), WithinRel(1.8e6, 1e-12));

    // Finite connection of 100 RTTs pays the slow-start ramp.
    auto finite = paper_cfg(ProtocolKind::TcpNc);
    finite.t_rtts = 100.0;
    CHECK_THAT(goodput_tcp_nc(finite, mbps(100)), WithinRel(3.02e6, 1e-12));

    auto too_short = finite;
    too_short.t_rtts = 10.0;
    CHECK_THROWS_AS(goodput_tcp_nc(too_short, mbps(1)), invalid_parameter);
    CHECK_THROWS_AS(goodput_tcp_nc(paper_cfg(ProtocolKind::Tcp), mbps(1)), invalid_parameter);
    CHECK_THROWS_AS(goodput_tcp_nc(cfg, 0.0), invalid_parameter);
}

TEST_CASE("tcp goodput") {
    CHECK(goodput_tcp(paper_cfg(ProtocolKind::Tcp), mbps(10)) == 4e6);
    // Frozen from an independent high-precision evaluation of the steady-state
    // loss formula at rtt = 0.1 s, 8000-bit packets.
    CHECK_THAT(goodput_tcp(paper_cfg(ProtocolKind::Tcp, 0.01), mbps(100)),
               WithinRel(808930.505241566, 1e-9));
    CHECK_THAT(goodput_tcp(paper_cfg(ProtocolKind::Tcp, 0.02), mbps(100)),
               WithinRel(531011.136155804, 1e-9));
}

TEST_CASE("goodput dispatch") {
    CHECK(goodput(paper_cfg(ProtocolKind::Ideal), mbps(2)) == mbps(2));
    CHECK_THAT(goodput(paper_cfg(ProtocolKind::TcpNc, 0.05), mbps(3)), WithinRel(2.85e6, 1e-12));
    CHECK_THAT(goodput(paper_cfg(ProtocolKind::Tcp, 0.01), mbps(0.1)), WithinRel(99000.0, 1e-12));
}

TEST_CASE("config validation") {
    auto cfg = paper_cfg(ProtocolKind::Tcp);
    cfg.srtt = 0.05;  // below rtt
    CHECK_THROWS_AS(cfg.validate(), invalid_parameter);
    cfg = paper_cfg(ProtocolKind::Tcp);
    cfg.p_p = 1.0;
    CHECK_THROWS_AS(cfg.validate(), invalid_parameter);
    cfg = paper_cfg(ProtocolKind::Tcp);
    cfg.w_max = 0.5;
    CHECK_THROWS_AS(cfg.validate(), invalid_parameter);
}

TEST_CASE("goodput never exceeds the loss-adjusted throughput") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> rate(1e4, 2e7);
    std::uniform_real_distribution<double> rtt_dist(0.01, 1.0);

    for (int i = 0; i < 1000; ++i) {
        const double p_p = unit(rng) * 0.9;
        const double rtt = rtt_dist(rng);
        const double r_t = rate(rng);
        for (auto kind : {ProtocolKind::Ideal, ProtocolKind::TcpNc, ProtocolKind::Tcp}) {
            const auto cfg = paper_cfg(kind, p_p, rtt);
            const double g = goodput(cfg, r_t);
            CHECK(g >= 0.0);
            CHECK(g <= r_t * (1.0 - p_p) + 1e-9);
            CHECK(g <= r_t + 1e-9);
            // Nondecreasing in r_t.
            CHECK(goodput(cfg, r_t * 1.5) >= g);
        }
    }
}

TEST_CASE("raw tcp rate strictly decreases with loss") {
    for (double rtt : {0.05, 0.1, 0.5}) {
        double prev = goodput_tcp(paper_cfg(ProtocolKind::Tcp, 1e-4, rtt), mbps(1000));
        for (double p_p = 0.005; p_p < 0.9; p_p += 0.005) {
            const double g = goodput_tcp(paper_cfg(ProtocolKind::Tcp, p_p, rtt), mbps(1000));
            CHECK(g < prev);
            prev = g;
        }
    }
}

TEST_CASE("tcp/nc with srtt = rtt feels loss only through the cap") {
    const double plateau = 4e6;
    for (double p_p : {0.0, 0.01, 0.05, 0.2, 0.5}) {
        // Above the plateau the cap is slack and the rate is exactly W_max/RTT.
        CHECK(goodput_tcp_nc(paper_cfg(ProtocolKind::TcpNc, p_p), mbps(10)) == plateau);
        // Below it the cap is the only loss dependence.
        const double r_t = mbps(2);
        CHECK(goodput_tcp_nc(paper_cfg(ProtocolKind::TcpNc, p_p), r_t) == r_t * (1.0 - p_p));
    }
}

TEST_CASE("tcp/nc dominates tcp for matched parameters") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> rate(1e4, 2e7);
    std::uniform_real_distribution<double> rtt_dist(0.01, 1.0);

    for (int i = 0; i < 1000; ++i) {
        const double p_p = unit(rng) * 0.9;
        const double rtt = rtt_dist(rng);
        const double r_t = rate(rng);
        const double nc = goodput_tcp_nc(paper_cfg(ProtocolKind::TcpNc, p_p, rtt), r_t);
        const double tcp = goodput_tcp(paper_cfg(ProtocolKind::Tcp, p_p, rtt), r_t);
        CHECK(nc >= tcp);
    }
}

TEST_CASE("finite-duration rate converges to the window limit") {
    auto cfg = paper_cfg(ProtocolKind::TcpNc);
    cfg.t_rtts = 1e6;
    const double finite = goodput_tcp_nc(cfg, mbps(100));
    const double limit = window_limited_rate(cfg);
    CHECK(std::abs(finite - limit) / limit < 1e-2);
}
