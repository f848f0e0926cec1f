#pragma once

#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "epidemigrid/engine.hpp"
#include "epidemigrid/sweep.hpp"

namespace epidemigrid {

namespace detail {

struct RunFlags {
    SimulationConfig cfg;
    std::string rt_text = "1:5";
    std::string out_path;
};

inline void add_config_flags(CLI::App* cmd, SimulationConfig& cfg) {
    cmd->add_option("--map", cfg.map_path, "city map, PGM P2/P5")->required();
    cmd->add_option("--attraction", cfg.attraction_path,
                    "attraction sidecar PGM (road values 1/5/10)");
    cmd->add_option("--threshold", cfg.threshold, "road/obstacle threshold")
        ->check(CLI::Range(0, 255));
    cmd->add_flag("--invert", cfg.invert, "treat bright pixels as road");
}

} // namespace detail

inline int run_command(const detail::RunFlags& flags, std::ostream& out, std::ostream& err) {
    SimulationConfig cfg = flags.cfg;
    const auto rt = parse_rt_interval(flags.rt_text);
    cfg.rt_min = rt.first;
    cfg.rt_max = rt.second;
    validate(cfg);

    const SimulationResult result = simulate(cfg);
    std::ofstream csv(flags.out_path);
    if (!csv) {
        err << "error: cannot write " << flags.out_path << "\n";
        return 1;
    }
    write_timeseries_csv(result.series, cfg, csv);
    out << summarize(result.outcome) << "\n";
    return 0;
}

inline int sweep_command(const std::string& spec_path, const std::string& out_dir, int jobs,
                         std::ostream& out) {
    const SweepSpec spec = load_sweep_spec(spec_path);
    const SweepResult result = run_sweep(spec, out_dir, jobs);
    std::int64_t failed = 0;
    for (const auto& run : result.runs) failed += run.error.empty() ? 0 : 1;
    out << "sweep: " << result.runs.size() << " runs, " << result.configs.size()
        << " configurations, " << failed << " failed; summary at " << out_dir << "/summary.csv\n";
    return failed == 0 ? 0 : 1;
}

inline int dump_graph_command(const SimulationConfig& cfg, const std::string& out_path,
                              std::ostream& err) {
    const GrayImage img = load_gray_image(cfg.map_path);
    const OccupancyGrid grid = binarize(img, cfg.threshold, cfg.invert);
    const AttractionGrid attraction = load_attraction(cfg.attraction_path, grid);
    const MapGraph graph = build_map_graph(grid, attraction, largest_component(grid));
    std::ofstream out(out_path);
    if (!out) {
        err << "error: cannot write " << out_path << "\n";
        return 1;
    }
    dump_edge_list(graph, out);
    return 0;
}

inline int cli_main(const std::vector<std::string>& args, std::ostream& out = std::cout,
                    std::ostream& err = std::cerr) {
    CLI::App app{"malware propagation simulator for mobile devices on a city grid"};
    app.require_subcommand(1);

    detail::RunFlags run_flags;
    auto* run = app.add_subcommand("run", "run one simulation and write its time series CSV");
    detail::add_config_flags(run, run_flags.cfg);
    run->add_option("--infected", run_flags.cfg.n_infected, "initially infected devices");
    run->add_option("--susceptible", run_flags.cfg.n_susceptible, "initially susceptible devices");
    run->add_option("--packets", run_flags.cfg.packets, "malware size in packets");
    run->add_option("--rt", run_flags.rt_text, "response-time interval MIN:MAX");
    run->add_option("--radius", run_flags.cfg.radius, "transmission radius in cells");
    run->add_option("--speed", run_flags.cfg.speed, "graph edges per simulation step");
    run->add_option("--band", run_flags.cfg.band_fraction, "boundary band fraction");
    run->add_option("--max-steps", run_flags.cfg.max_steps, "step budget before censoring");
    run->add_option("--seed", run_flags.cfg.seed, "run seed")->envname("EPIDEMIGRID_SEED");
    run->add_flag("--reset-on-disconnect", run_flags.cfg.reset_on_disconnect,
                  "drop packet progress when out of range");
    run->add_flag("--static", run_flags.cfg.static_devices, "disable movement (test mode)");
    run->add_option("--out", run_flags.out_path, "time series CSV path")->required();

    std::string spec_path, out_dir;
    int jobs = static_cast<int>(std::thread::hardware_concurrency());
    if (jobs < 1) jobs = 1;
    auto* sweep = app.add_subcommand("sweep", "run a replicated parameter sweep");
    sweep->add_option("--spec", spec_path, "sweep spec file")->required();
    sweep->add_option("--out-dir", out_dir, "directory for per-run CSVs and summary.csv")
        ->required();
    sweep->add_option("--jobs", jobs, "worker threads");

    SimulationConfig dump_cfg;
    std::string dump_out;
    auto* dump = app.add_subcommand("dump-graph", "write the road graph as an edge list");
    detail::add_config_flags(dump, dump_cfg);
    dump->add_option("--out", dump_out, "edge list path")->required();

    std::vector<const char*> argv;
    argv.push_back("epidemigrid");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        const auto subs = app.get_subcommands();
        out << (subs.empty() ? app.help() : subs.front()->help());
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (run->parsed()) return run_command(run_flags, out, err);
        if (sweep->parsed()) return sweep_command(spec_path, out_dir, jobs, out);
        if (dump->parsed()) return dump_graph_command(dump_cfg, dump_out, err);
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << "\n";
        return 1;
    }
    return 1;
}

} // namespace epidemigrid
