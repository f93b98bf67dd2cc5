// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// criterion fails. Tolerances are pinned in code next to each check.

#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "bsplanner/capacity.hpp"
#include "bsplanner/goodput.hpp"
#include "bsplanner/presets.hpp"
#include "bsplanner/simulate.hpp"
#include "bsplanner/sweep.hpp"
#include "bsplanner/units.hpp"

using namespace bsplanner;
using units::mbps;

namespace {

int failures = 0;

void report(int criterion, const std::string& name, bool ok, const std::string& detail = "") {
    std::printf("%s  criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", criterion, name.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++failures;
}

bool within_rel(double value, double target, double tol) {
    return std::abs(value - target) <= tol * std::abs(target);
}

// 1. Unstable-regime pin: analytic n_bs exactly 5 for the mix32 scenario.
void criterion_1() {
    ScenarioParams params;
    params.n = 1000;
    params.p = 0.04;
    params.files = presets::mixtures().at("mix32");
    params.r_t = mbps(1);
    params.r_max = mbps(300);
    params.n_max = 200;
    const double nbs = expected_base_stations(params, mbps(1));
    report(1, "unstable-regime pin (n_bs = 5.000 exactly)", nbs == 5.0,
           "n_bs = " + std::to_string(nbs));
}

// 2. Window-limited plateau: 4 Mbps at RTT = 100 ms, 0.8 Mbps at 500 ms, both +-0.1%.
void criterion_2() {
    ProtocolConfig cfg;
    cfg.kind = ProtocolKind::TcpNc;
    cfg.w_max = 50.0;
    cfg.packet_size = 8000.0;
    cfg.rtt = cfg.srtt = 0.1;
    const double fast = goodput_tcp_nc(cfg, mbps(100));
    cfg.rtt = cfg.srtt = 0.5;
    const double slow = goodput_tcp_nc(cfg, mbps(100));
    const bool ok = within_rel(fast, 4e6, 0.001) && within_rel(slow, 8e5, 0.001);
    report(2, "window-limited plateau (4 Mbps / 0.8 Mbps +-0.1%)", ok,
           "rtt=100ms: " + std::to_string(fast / 1e6) + " Mbps, rtt=500ms: " +
               std::to_string(slow / 1e6) + " Mbps");
}

std::map<std::pair<double, double>, const SweepRow*> rows_by_point(
    const std::vector<SweepRow>& rows, ProtocolKind kind, double p_p) {
    std::map<std::pair<double, double>, const SweepRow*> out;
    for (const auto& r : rows)
        if (r.protocol == kind && r.p_p == p_p) out[{r.p, r.r_t}] = &r;
    return out;
}

// 3. No-loss protocol equivalence across the fig5 grid, exact equality.
void criterion_3() {
    const auto rows = run_sweep(presets::make("fig5a"));
    const auto nc = rows_by_point(rows, ProtocolKind::TcpNc, 0.0);
    bool ok = !nc.empty();
    for (const auto& r : rows) {
        if (r.protocol != ProtocolKind::Tcp) continue;
        const auto* twin = nc.at({r.p, r.r_t});
        if (r.r_g != twin->r_g || r.nbs_frac != twin->nbs_frac) ok = false;
    }
    report(3, "no-loss protocol equivalence on fig5 grid (exact)", ok);
}

// 4. Loss dominance: n_bs(Tcp) >= n_bs(TcpNc) everywhere, strict somewhere per p_p.
void criterion_4() {
    bool ok = true;
    std::string detail;
    for (double target_pp : {0.01, 0.02, 0.03, 0.05}) {
        bool strict = false;
        bool found = false;
        for (const char* preset : {"fig5", "fig6"}) {
            const auto rows = run_sweep(presets::make(preset));
            const auto nc = rows_by_point(rows, ProtocolKind::TcpNc, target_pp);
            if (nc.empty()) continue;
            found = true;
            for (const auto& r : rows) {
                if (r.protocol != ProtocolKind::Tcp || r.p_p != target_pp) continue;
                const auto* twin = nc.at({r.p, r.r_t});
                if (r.nbs_frac < twin->nbs_frac) ok = false;
                if (r.nbs_frac > twin->nbs_frac) strict = true;
            }
        }
        if (!found || !strict) {
            ok = false;
            detail += "no strict gap at p_p=" + std::to_string(target_pp) + " ";
        }
    }
    report(4, "loss dominance n_bs(tcp) >= n_bs(tcpnc) on fig5/fig6 grids", ok, detail);
}

// 5. TCP/NC loss-insensitivity: below the plateau it matches Ideal at r_t(1-p_p).
void criterion_5() {
    SweepSpec spec = presets::make("fig5");
    spec.axes.protocol_kind = {ProtocolKind::TcpNc};
    const auto rows = run_sweep(spec);
    const double plateau = spec.base_protocol.w_max * spec.base_protocol.packet_size /
                           spec.base_protocol.srtt;
    bool ok = false;
    for (const auto& row : rows) {
        const double capped = row.r_t * (1.0 - row.p_p);
        if (capped >= plateau) continue;
        ScenarioParams scenario = spec.base_scenario;
        scenario.p = row.p;
        scenario.r_t = row.r_t;
        if (row.nbs_frac != expected_base_stations(scenario, capped)) {
            report(5, "tcp/nc equals ideal at r_t(1-p_p) below the plateau (exact)", false,
                   "mismatch at p=" + std::to_string(row.p) + " r_t=" + std::to_string(row.r_t));
            return;
        }
        ok = true;
    }
    report(5, "tcp/nc equals ideal at r_t(1-p_p) below the plateau (exact)", ok);
}

// 6. Desk-scale Monte Carlo against the Little's-Law oracle.
void criterion_6() {
    ScenarioParams params;
    params.n = 1000;
    params.p = 0.03;
    params.files = presets::mixtures().at("mix508");
    params.r_t = mbps(4);
    params.r_max = mbps(300);
    params.n_max = 200;
    SimConfig sim{1000.0, 0.1, 10, 20240101};
    const auto stats = run_simulation(params, sim, mbps(4));

    const bool active_ok = within_rel(stats.mean_active_fraction, 0.3048, 0.05);
    const bool frac_ok = within_rel(stats.mean_nbs_fractional, 4.064, 0.10);
    bool ceil_ok = true;
    std::set<long> ceilings;
    for (const auto& it : stats.per_iteration) {
        ceilings.insert(it.nbs_required);
        if (it.nbs_required != 5) ceil_ok = false;
    }
    std::string ceiling_list;
    for (long c : ceilings) ceiling_list += std::to_string(c) + " ";

    report(6, "desk-scale Monte Carlo vs analytic oracle",
           active_ok && frac_ok && ceil_ok,
           "mean_active=" + std::to_string(stats.mean_active_fraction) +
               " (target 0.3048 +-5%: " + (active_ok ? "ok" : "FAIL") + "), nbs_frac=" +
               std::to_string(stats.mean_nbs_fractional) + " (target 4.064 +-10%: " +
               (frac_ok ? "ok" : "FAIL") + "), per-iteration ceilings {" + ceiling_list +
               "} (target {5}: " + (ceil_ok ? "ok" : "FAIL") + ")");
}

// 7. Ceiling bias direction on the fig4 presets, reduced r-grid, 10 iterations.
void criterion_7() {
    bool ok = true;
    std::string detail;
    int violations = 0;
    for (const char* name : {"fig4a", "fig4b"}) {
        SweepSpec spec = presets::make(name);
        spec.axes.r_t = presets::default_rt_axis(0.5);
        spec.sim = SimConfig{1000.0, 0.1, 10, 7};
        const auto rows = run_sweep(spec);
        for (const auto& r : rows) {
            if (r.nbs_required >= r.nbs_frac) continue;
            ok = false;
            if (++violations <= 3)
                detail += std::string(name) + " p=" + std::to_string(r.p) + " r_t=" +
                          std::to_string(r.r_t / 1e6) + "Mbps mc=" +
                          std::to_string(r.nbs_required) + " analytic=" +
                          std::to_string(r.nbs_frac) + "; ";
        }
    }
    if (violations > 3) detail += "(" + std::to_string(violations) + " total violations)";
    report(7, "Monte Carlo ceiling >= analytic fractional n_bs on fig4 grids", ok, detail);
}

// 8. Property suites, randomized over >= 1000 samples each.
void criterion_8() {
    std::mt19937_64 rng(2718);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> size(1e3, 1e9);
    std::uniform_real_distribution<double> rate(1e4, 2e7);
    std::uniform_real_distribution<double> rtt_dist(0.01, 1.0);
    bool ok = true;
    std::string detail;

    // Capacity: bounds, monotonicity, ceiling gap.
    for (int i = 0; i < 1000 && ok; ++i) {
        const double mu = size(rng);
        const double p = unit(rng);
        const double r_g = rate(rng);
        FileSizeDistribution files{{{mu, 1.0}}};
        const double a = activity_probability(files, p, r_g);
        if (a < 0.0 || a > 1.0 || activity_probability(files, p, r_g * 2) > a ||
            activity_probability(files, std::min(1.0, p * 2), r_g) < a) {
            ok = false;
            detail = "capacity monotonicity";
        }
        ScenarioParams params{1000, p, files, rate(rng), mbps(300), 200};
        const double frac = expected_base_stations(params, r_g);
        const auto needed = static_cast<double>(required_base_stations(params, r_g));
        if (needed < frac || needed - frac >= 1.0) {
            ok = false;
            detail = "ceiling gap";
        }
    }

    // Goodput: universal cap, protocol ordering, monotonicity in r_t.
    for (int i = 0; i < 1000 && ok; ++i) {
        ProtocolConfig cfg;
        cfg.w_max = 50.0;
        cfg.packet_size = 8000.0;
        cfg.rtt = cfg.srtt = rtt_dist(rng);
        cfg.p_p = unit(rng) * 0.9;
        const double r_t = rate(rng);
        cfg.kind = ProtocolKind::TcpNc;
        const double nc = goodput(cfg, r_t);
        cfg.kind = ProtocolKind::Tcp;
        const double tcp = goodput(cfg, r_t);
        if (nc > r_t * (1.0 - cfg.p_p) + 1e-9 || tcp > nc + 1e-12 ||
            goodput(cfg, r_t * 2) < tcp) {
            ok = false;
            detail = "goodput cap/ordering";
        }
    }

    // Simulator: determinism and bit conservation on a small scenario.
    ScenarioParams params{50, 0.05, FileSizeDistribution{{{3e5, 1.0}}}, mbps(1), mbps(300), 200};
    SimConfig sim{100.0, 0.1, 4, 31415};
    const auto a = run_simulation(params, sim, mbps(1));
    const auto b = run_simulation(params, sim, mbps(1));
    if (a.mean_nbs_fractional != b.mean_nbs_fractional || a.completed != b.completed) {
        ok = false;
        detail = "simulator determinism";
    }
    std::vector<UserState> users(50);
    SimRng srng = make_iteration_rng(31415, 0);
    double served = 0.0;
    long completed = 0;
    for (int s = 0; s < 1000; ++s) {
        const auto m = step(users, params, mbps(1), 0.1, s * 0.1, srng);
        served += m.bits_served;
        completed += m.completions;
        if (m.fractional_demand > params.n * params.per_user_demand() + 1e-12) {
            ok = false;
            detail = "demand bound";
        }
    }
    double in_flight = 0.0;
    for (const auto& u : users)
        for (const auto& t : u.queue) in_flight += t.size_bits - t.remaining_bits;
    const double expected = static_cast<double>(completed) * 3e5 + in_flight;
    if (std::abs(served - expected) > 1e-6 * expected) {
        ok = false;
        detail = "bit conservation";
    }

    report(8, "randomized property suites (capacity, goodput, simulator)", ok, detail);
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
