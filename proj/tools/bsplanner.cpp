// bsplanner: base-station capacity planning CLI.
//
// Subcommands: analytic | goodput | simulate | sweep | presets.
// Exit codes: 0 success, 2 configuration error, 3 runtime/numeric error.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bsplanner/config.hpp"
#include "bsplanner/presets.hpp"
#include "bsplanner/report.hpp"
#include "bsplanner/sweep.hpp"

namespace fs = std::filesystem;
using bsplanner::invalid_parameter;
using bsplanner::config::json;
using bsplanner::config::RunConfig;

namespace {

struct CommonOpts {
    std::string config_path;
    std::string preset;
    std::string out_dir;
    std::string mode;
    std::vector<std::string> sets;
    std::uint64_t seed = 0;
    bool seed_given = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "JSON config file (or an emitted manifest.json)");
    cmd->add_option("--preset", opts.preset, "named parameter grid (see `bsplanner presets`)");
    cmd->add_option("--out-dir", opts.out_dir, "write outputs under this directory");
    cmd->add_option("--mode", opts.mode, "analytic or montecarlo");
    cmd->add_option("--seed", opts.seed, "master PRNG seed")->each([&opts](const std::string&) {
        opts.seed_given = true;
    });
    cmd->add_option("--set", opts.sets, "override a config field, e.g. --set scenario.p=0.04")
        ->take_all();
}

RunConfig resolve(const CommonOpts& opts, const std::string& fallback_preset) {
    // Start from a fully materialized preset document, then layer the config
    // file, --set overrides, and the direct flags on top.
    std::string preset = opts.preset;
    json doc;
    if (!opts.config_path.empty()) {
        doc = bsplanner::config::load_config_file(opts.config_path);
        if (preset.empty()) preset = doc.value("preset", "");
    }
    if (preset.empty()) preset = fallback_preset;

    json effective = bsplanner::config::to_json(bsplanner::config::from_preset(preset));
    if (!doc.is_null()) effective.merge_patch(doc);
    for (const auto& assignment : opts.sets) bsplanner::config::apply_override(effective, assignment);
    if (!opts.mode.empty()) effective["mode"] = opts.mode;
    if (opts.seed_given) effective["sim"]["seed"] = opts.seed;
    if (!opts.out_dir.empty()) effective["out_dir"] = opts.out_dir;
    effective["preset"] = preset;

    return bsplanner::config::parse_config(effective);
}

std::ofstream open_output(const RunConfig& cfg, const std::string& name) {
    fs::create_directories(cfg.out_dir);
    const fs::path path = fs::path(cfg.out_dir) / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file " + path.string());
    return out;
}

std::string csv_name(const RunConfig& cfg) {
    return (cfg.preset.empty() ? std::string("sweep") : cfg.preset) + ".csv";
}

void write_manifest(const RunConfig& cfg, const std::string& command) {
    auto out = open_output(cfg, "manifest.json");
    out << bsplanner::config::make_manifest(cfg, command).dump(2) << "\n";
}

int cmd_analytic(const CommonOpts& opts) {
    RunConfig cfg = resolve(opts, "fig3a");
    cfg.spec.mode = bsplanner::SweepMode::Analytic;
    const auto rows = bsplanner::run_sweep(cfg.spec);
    if (opts.out_dir.empty()) {
        bsplanner::report::write_analytic_csv(rows, std::cout, cfg.power_kw_per_bs);
    } else {
        auto out = open_output(cfg, csv_name(cfg));
        bsplanner::report::write_analytic_csv(rows, out, cfg.power_kw_per_bs);
    }
    return 0;
}

int cmd_goodput(const CommonOpts& opts) {
    RunConfig cfg = resolve(opts, "fig5");
    cfg.spec.mode = bsplanner::SweepMode::Analytic;
    // Goodput does not depend on the population axes.
    cfg.spec.axes.p.clear();
    cfg.spec.axes.file_mixture_id.clear();
    const auto rows = bsplanner::run_sweep(cfg.spec);
    if (opts.out_dir.empty()) {
        bsplanner::report::write_goodput_csv(rows, std::cout);
    } else {
        auto out = open_output(cfg, csv_name(cfg));
        bsplanner::report::write_goodput_csv(rows, out);
    }
    return 0;
}

int cmd_simulate(const CommonOpts& opts) {
    RunConfig cfg = resolve(opts, "fig4b");
    if (!cfg.spec.sim) throw invalid_parameter("simulate requires a sim config");

    // Single scenario: base parameters, axes ignored.
    bsplanner::ScenarioParams scenario = cfg.spec.base_scenario;
    const double r_g = bsplanner::goodput(cfg.spec.base_protocol, scenario.r_t);
    const auto stats = bsplanner::run_simulation(scenario, *cfg.spec.sim, r_g);

    if (opts.out_dir.empty()) {
        bsplanner::report::write_simulate_csv(stats, std::cout);
    } else {
        auto out = open_output(cfg, csv_name(cfg));
        bsplanner::report::write_simulate_csv(stats, out);
        write_manifest(cfg, "simulate");
    }
    return 0;
}

int cmd_sweep(const CommonOpts& opts, bool compare) {
    RunConfig cfg = resolve(opts, "fig3a");
    const std::string name = csv_name(cfg);

    if (compare) {
        const auto pairs = bsplanner::compare_protocols(cfg.spec);
        if (opts.out_dir.empty()) {
            bsplanner::report::write_compare_csv(pairs, std::cout);
        } else {
            auto out = open_output(cfg, name);
            bsplanner::report::write_compare_csv(pairs, out);
            write_manifest(cfg, "sweep --compare");
        }
        return 0;
    }

    const auto rows = bsplanner::run_sweep(cfg.spec);
    if (opts.out_dir.empty()) {
        bsplanner::report::write_sweep_csv(rows, std::cout, cfg.power_kw_per_bs);
        return 0;
    }
    {
        auto out = open_output(cfg, name);
        bsplanner::report::write_sweep_csv(rows, out, cfg.power_kw_per_bs);
    }
    {
        const std::string plot_name =
            (cfg.preset.empty() ? std::string("sweep") : cfg.preset) + ".gp";
        auto out = open_output(cfg, plot_name);
        bsplanner::report::write_plot_script(rows, name, cfg.preset, out);
    }
    write_manifest(cfg, "sweep");
    return 0;
}

int cmd_presets() {
    for (const auto& name : bsplanner::presets::names()) std::cout << name << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"base-station capacity planner"};
    app.require_subcommand(1);

    CommonOpts opts;
    bool compare = false;

    auto* analytic = app.add_subcommand("analytic", "closed-form n_bs over a parameter grid");
    add_common(analytic, opts);
    auto* goodput = app.add_subcommand("goodput", "protocol goodput r_g against r_t");
    add_common(goodput, opts);
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo traffic simulation (base scenario)");
    add_common(simulate, opts);
    auto* sweep = app.add_subcommand("sweep", "full grid sweep with CSV + plot script");
    add_common(sweep, opts);
    sweep->add_flag("--compare", compare, "pair TCP/NC against TCP per grid point");
    auto* presets = app.add_subcommand("presets", "list built-in presets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*analytic) return cmd_analytic(opts);
        if (*goodput) return cmd_goodput(opts);
        if (*simulate) return cmd_simulate(opts);
        if (*sweep) return cmd_sweep(opts, compare);
        if (*presets) return cmd_presets();
    } catch (const invalid_parameter& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
