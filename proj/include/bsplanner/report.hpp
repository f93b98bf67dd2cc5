#pragma once

// CSV and plot-script emission for the CLI subcommands. Column order is
// fixed; see README for the documented schemas.

#include <cmath>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "bsplanner/csv.hpp"
#include "bsplanner/simulate.hpp"
#include "bsplanner/sweep.hpp"

namespace bsplanner::report {

using csv::format_number;

inline void write_analytic_csv(const std::vector<SweepRow>& rows, std::ostream& out,
                               std::optional<double> power_kw_per_bs = std::nullopt) {
    csv::Writer w(out);
    std::vector<std::string> header = {"p",      "r_t_bps",  "r_t_mbps", "r_g_bps",
                                       "r_g_mbps", "activity", "nbs_frac", "nbs_ceil"};
    if (power_kw_per_bs) header.push_back("power_kw");
    w.header(header);
    for (const auto& r : rows) {
        std::vector<std::string> fields = {
            format_number(r.p),          format_number(r.r_t),
            format_number(r.r_t / 1e6),  format_number(r.r_g),
            format_number(r.r_g / 1e6),  format_number(r.activity),
            format_number(r.nbs_frac),   format_number(r.nbs_ceil),
        };
        if (power_kw_per_bs)
            fields.push_back(format_number(static_cast<double>(r.nbs_ceil) * *power_kw_per_bs));
        w.line(fields);
    }
}

inline void write_goodput_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
    csv::Writer w(out);
    w.header({"protocol", "r_t_bps", "r_t_mbps", "p_p", "rtt", "r_g_bps", "r_g_mbps"});
    for (const auto& r : rows)
        w.line({to_string(r.protocol), format_number(r.r_t), format_number(r.r_t / 1e6),
                format_number(r.p_p), format_number(r.rtt), format_number(r.r_g),
                format_number(r.r_g / 1e6)});
}

inline void write_simulate_csv(const SimStats& stats, std::ostream& out) {
    csv::Writer w(out);
    w.header({"iteration", "mean_active_fraction", "mean_nbs_fractional", "nbs_required",
              "completed", "mean_completion_time"});
    for (std::size_t i = 0; i < stats.per_iteration.size(); ++i) {
        const auto& it = stats.per_iteration[i];
        w.line({std::to_string(i), format_number(it.mean_active_fraction),
                format_number(it.mean_nbs_fractional), format_number(it.nbs_required),
                format_number(it.completed), format_number(it.mean_completion_time)});
    }
    w.line({"aggregate", format_number(stats.mean_active_fraction),
            format_number(stats.mean_nbs_fractional), format_number(stats.nbs_required),
            format_number(stats.completed), format_number(stats.mean_completion_time)});
}

inline void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out,
                            std::optional<double> power_kw_per_bs = std::nullopt) {
    csv::Writer w(out);
    std::vector<std::string> header = {
        "mixture",  "protocol", "p",        "r_t_bps",  "r_t_mbps",
        "p_p",      "rtt",      "r_g_bps",  "r_g_mbps", "activity",
        "nbs_frac", "nbs_ceil", "mode",     "mean_active_fraction",
        "nbs_required", "nbs_required_sd"};
    if (power_kw_per_bs) header.push_back("power_kw");
    w.header(header);
    for (const auto& r : rows) {
        std::vector<std::string> fields = {
            r.mixture_id,
            to_string(r.protocol),
            format_number(r.p),
            format_number(r.r_t),
            format_number(r.r_t / 1e6),
            format_number(r.p_p),
            format_number(r.rtt),
            format_number(r.r_g),
            format_number(r.r_g / 1e6),
            format_number(r.activity),
            format_number(r.nbs_frac),
            format_number(r.nbs_ceil),
            to_string(r.mode),
            format_number(r.mean_active_fraction),
            format_number(r.nbs_required),
            format_number(r.nbs_required_sd),
        };
        if (power_kw_per_bs)
            fields.push_back(format_number(static_cast<double>(r.nbs_ceil) * *power_kw_per_bs));
        w.line(fields);
    }
}

inline void write_compare_csv(const std::vector<ProtocolComparison>& pairs, std::ostream& out) {
    csv::Writer w(out);
    w.header({"mixture", "p", "r_t_bps", "r_t_mbps", "p_p", "rtt", "r_g_tcpnc", "r_g_tcp",
              "nbs_frac_tcpnc", "nbs_frac_tcp", "nbs_delta", "nbs_ratio"});
    for (const auto& c : pairs)
        w.line({c.tcp_nc.mixture_id, format_number(c.tcp_nc.p), format_number(c.tcp_nc.r_t),
                format_number(c.tcp_nc.r_t / 1e6), format_number(c.tcp_nc.p_p),
                format_number(c.tcp_nc.rtt), format_number(c.tcp_nc.r_g),
                format_number(c.tcp.r_g), format_number(c.tcp_nc.nbs_frac),
                format_number(c.tcp.nbs_frac), format_number(c.nbs_delta),
                format_number(c.nbs_ratio)});
}

// Gnuplot script drawing n_bs against r_t (Mbps), one curve per distinct
// (mixture, protocol, p, p_p) combination in the emitted CSV. References the
// CSV by relative path so the figure renders standalone.
inline void write_plot_script(const std::vector<SweepRow>& rows, const std::string& csv_name,
                              const std::string& title, std::ostream& out) {
    std::set<std::tuple<std::string, std::string, double, double>> curves;
    bool monte_carlo = false;
    for (const auto& r : rows) {
        curves.insert({r.mixture_id, to_string(r.protocol), r.p, r.p_p});
        if (r.mode == SweepMode::MonteCarlo) monte_carlo = true;
    }
    const char* ycol = monte_carlo ? "$15" : "$11";

    out << "set datafile separator ','\n"
        << "set title '" << title << "'\n"
        << "set xlabel 'r_t (Mbps)'\n"
        << "set ylabel 'n_{bs}'\n"
        << "set key outside right\n"
        << "set grid\n"
        << "plot \\\n";
    std::size_t i = 0;
    for (const auto& [mixture, protocol, p, p_p] : curves) {
        out << "  '" << csv_name << "' using 5:(strcol(1) eq '" << mixture
            << "' && strcol(2) eq '" << protocol << "' && abs($3-" << format_number(p)
            << ")<1e-12 && abs($6-" << format_number(p_p) << ")<1e-12 ? " << ycol
            << " : 1/0) with lines title '" << protocol << " p=" << format_number(p);
        if (p_p > 0.0) out << " p_p=" << format_number(p_p);
        out << "'";
        if (++i != curves.size()) out << ", \\";
        out << "\n";
    }
}

}  // namespace bsplanner::report
