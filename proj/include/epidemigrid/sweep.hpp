#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "epidemigrid/engine.hpp"
#include "epidemigrid/error.hpp"

namespace epidemigrid {

// A sweep is the Cartesian product of the four axes, each point replicated
// with seeds base_seed + run_index.
struct SweepSpec {
    SimulationConfig base;
    std::vector<std::pair<std::int32_t, std::int32_t>> rt_axis;
    std::vector<std::int32_t> packets_axis;
    std::vector<std::int32_t> infected_axis;
    std::vector<std::int32_t> susceptible_axis;
    std::int32_t replications = 1;
    std::uint64_t base_seed = 0;
};

inline std::pair<std::int32_t, std::int32_t> parse_rt_interval(const std::string& text) {
    try {
        const auto colon = text.find(':');
        if (colon == std::string::npos) {
            const int t = std::stoi(text);
            return {t, t};
        }
        return {std::stoi(text.substr(0, colon)), std::stoi(text.substr(colon + 1))};
    } catch (const std::exception&) {
        throw ConfigInvalid("bad response-time interval '" + text + "' (want MIN:MAX)");
    }
}

namespace detail {

inline bool parse_bool(const std::string& value, const std::string& key) {
    if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
    if (value == "false" || value == "0" || value == "no" || value == "off") return false;
    throw ConfigInvalid("bad boolean for '" + key + "': " + value);
}

inline std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

} // namespace detail

// Flat `key = value` format with '#' comments; the axis keys rt, packets,
// infected and susceptible may repeat to span the grid.
inline SweepSpec parse_sweep_spec(std::istream& in) {
    SweepSpec spec;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigInvalid("sweep spec line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigInvalid("sweep spec line " + std::to_string(lineno) + ": empty key or value");
        try {
            if (key == "map") spec.base.map_path = value;
            else if (key == "attraction") spec.base.attraction_path = value;
            else if (key == "threshold") spec.base.threshold = std::stoi(value);
            else if (key == "invert") spec.base.invert = detail::parse_bool(value, key);
            else if (key == "radius") spec.base.radius = std::stod(value);
            else if (key == "speed") spec.base.speed = std::stoi(value);
            else if (key == "band") spec.base.band_fraction = std::stod(value);
            else if (key == "max_steps") spec.base.max_steps = std::stoll(value);
            else if (key == "reset_on_disconnect")
                spec.base.reset_on_disconnect = detail::parse_bool(value, key);
            else if (key == "static") spec.base.static_devices = detail::parse_bool(value, key);
            else if (key == "replications") spec.replications = std::stoi(value);
            else if (key == "base_seed") spec.base_seed = std::stoull(value);
            else if (key == "rt") spec.rt_axis.push_back(parse_rt_interval(value));
            else if (key == "packets") spec.packets_axis.push_back(std::stoi(value));
            else if (key == "infected") spec.infected_axis.push_back(std::stoi(value));
            else if (key == "susceptible") spec.susceptible_axis.push_back(std::stoi(value));
            else
                throw ConfigInvalid("sweep spec line " + std::to_string(lineno) + ": unknown key '" +
                                    key + "'");
        } catch (const ConfigInvalid&) {
            throw;
        } catch (const std::exception&) {
            throw ConfigInvalid("sweep spec line " + std::to_string(lineno) + ": bad value for '" +
                                key + "'");
        }
    }
    if (spec.replications < 1) throw ConfigInvalid("replications must be >= 1");
    // Unlisted axes fall back to the base configuration value.
    if (spec.rt_axis.empty()) spec.rt_axis.push_back({spec.base.rt_min, spec.base.rt_max});
    if (spec.packets_axis.empty()) spec.packets_axis.push_back(spec.base.packets);
    if (spec.infected_axis.empty()) spec.infected_axis.push_back(spec.base.n_infected);
    if (spec.susceptible_axis.empty()) spec.susceptible_axis.push_back(spec.base.n_susceptible);
    return spec;
}

inline SweepSpec load_sweep_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FileNotFound("cannot open sweep spec: " + path);
    return parse_sweep_spec(in);
}

// Lower-median summary of one integer statistic; quartiles use the same
// deterministic rank convention.
struct StatSummary {
    std::optional<std::int64_t> median;
    std::optional<std::int64_t> q1;
    std::optional<std::int64_t> q3;
};

inline StatSummary summarize_values(std::vector<std::int64_t> values) {
    StatSummary s;
    if (values.empty()) return s;
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    s.median = values[(n - 1) / 2];
    s.q1 = values[(n - 1) / 4];
    s.q3 = values[3 * (n - 1) / 4];
    return s;
}

struct EnsembleSummary {
    std::int64_t runs = 0;
    std::int64_t pandemic_count = 0;
    std::int64_t censored_count = 0;
    double pandemic_fraction = 0.0;
    StatSummary peak_infected;
    StatSummary peak_step;
    StatSummary extinction_step;
};

// Censored runs count toward pandemic_fraction's denominator but are left
// out of the step statistics.
inline EnsembleSummary aggregate(const std::vector<Outcome>& outcomes) {
    if (outcomes.empty()) throw Error("cannot aggregate an empty outcome list");
    EnsembleSummary s;
    s.runs = static_cast<std::int64_t>(outcomes.size());
    std::vector<std::int64_t> peaks, peak_steps, extinctions;
    for (const auto& o : outcomes) {
        if (o.kind == OutcomeKind::Pandemic) ++s.pandemic_count;
        if (o.kind == OutcomeKind::Censored) {
            ++s.censored_count;
            continue;
        }
        peaks.push_back(o.peak_infected);
        peak_steps.push_back(o.peak_step);
        if (o.extinction_step) extinctions.push_back(*o.extinction_step);
    }
    s.pandemic_fraction = static_cast<double>(s.pandemic_count) / static_cast<double>(s.runs);
    s.peak_infected = summarize_values(std::move(peaks));
    s.peak_step = summarize_values(std::move(peak_steps));
    s.extinction_step = summarize_values(std::move(extinctions));
    return s;
}

struct SweepConfigPoint {
    SimulationConfig config; // seed filled per replication
    std::string label;
};

inline std::vector<SweepConfigPoint> enumerate_configs(const SweepSpec& spec) {
    std::vector<SweepConfigPoint> points;
    for (const auto& [rt_min, rt_max] : spec.rt_axis) {
        for (const auto packets : spec.packets_axis) {
            for (const auto infected : spec.infected_axis) {
                for (const auto susceptible : spec.susceptible_axis) {
                    SweepConfigPoint point;
                    point.config = spec.base;
                    point.config.rt_min = rt_min;
                    point.config.rt_max = rt_max;
                    point.config.packets = packets;
                    point.config.n_infected = infected;
                    point.config.n_susceptible = susceptible;
                    point.label = "rt" + std::to_string(rt_min) + "-" + std::to_string(rt_max) +
                                  "_p" + std::to_string(packets) + "_i" + std::to_string(infected) +
                                  "_s" + std::to_string(susceptible);
                    points.push_back(std::move(point));
                }
            }
        }
    }
    return points;
}

struct SweepRunRecord {
    std::string label;
    std::uint64_t seed = 0;
    std::optional<Outcome> outcome; // empty on failure
    std::string error;
};

struct SweepResult {
    std::vector<SweepConfigPoint> configs;
    std::vector<SweepRunRecord> runs;       // configs.size() * replications entries
    std::vector<EnsembleSummary> summaries; // one per config
};

namespace detail {

inline void write_stat_cells(std::ostream& out, const StatSummary& s) {
    auto cell = [&](const std::optional<std::int64_t>& v) {
        out << ',';
        if (v) out << *v;
    };
    cell(s.median);
    cell(s.q1);
    cell(s.q3);
}

} // namespace detail

inline void write_summary_csv(const SweepResult& result, std::ostream& out) {
    out << "rt_min,rt_max,packets,infected,susceptible,replications,completed,pandemic_fraction,"
           "censored,peak_infected_median,peak_infected_q1,peak_infected_q3,peak_step_median,"
           "peak_step_q1,peak_step_q3,extinction_step_median,extinction_step_q1,extinction_step_q3\n";
    char frac[32];
    for (std::size_t c = 0; c < result.configs.size(); ++c) {
        const auto& cfg = result.configs[c].config;
        const auto& s = result.summaries[c];
        std::snprintf(frac, sizeof(frac), "%.6f", s.pandemic_fraction);
        out << cfg.rt_min << ',' << cfg.rt_max << ',' << cfg.packets << ',' << cfg.n_infected << ','
            << cfg.n_susceptible << ',' << result.runs.size() / result.configs.size() << ','
            << s.runs << ',' << frac << ',' << s.censored_count;
        detail::write_stat_cells(out, s.peak_infected);
        detail::write_stat_cells(out, s.peak_step);
        detail::write_stat_cells(out, s.extinction_step);
        out << '\n';
    }
}

// Runs the whole grid on a worker pool. Per-run CSVs land in out_dir, the
// per-configuration aggregate in out_dir/summary.csv; failed runs are logged
// to out_dir/failures.log and skipped in the aggregates.
inline SweepResult run_sweep(const SweepSpec& spec, const std::string& out_dir, int jobs) {
    if (jobs < 1) throw ConfigInvalid("jobs must be >= 1");
    std::filesystem::create_directories(out_dir);

    SweepResult result;
    result.configs = enumerate_configs(spec);
    const std::size_t reps = static_cast<std::size_t>(spec.replications);
    const std::size_t total_runs = result.configs.size() * reps;
    result.runs.resize(total_runs);

    std::atomic<std::size_t> cursor{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t run_index = cursor.fetch_add(1);
            if (run_index >= total_runs) return;
            const std::size_t config_index = run_index / reps;
            const std::size_t rep = run_index % reps;
            const auto& point = result.configs[config_index];
            auto& record = result.runs[run_index];
            record.label = point.label + "_rep" + std::to_string(rep);
            SimulationConfig cfg = point.config;
            cfg.seed = spec.base_seed + run_index;
            record.seed = cfg.seed;
            try {
                const SimulationResult sim = simulate(cfg);
                const auto csv_path =
                    std::filesystem::path(out_dir) / (record.label + ".csv");
                std::ofstream csv(csv_path);
                if (!csv) throw Error("cannot write " + csv_path.string());
                write_timeseries_csv(sim.series, cfg, csv);
                record.outcome = sim.outcome;
            } catch (const std::exception& ex) {
                record.error = ex.what();
            }
        }
    };

    std::vector<std::thread> pool;
    const int thread_count = std::min<int>(jobs, static_cast<int>(total_runs));
    for (int t = 0; t < thread_count; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    bool any_failure = false;
    for (std::size_t c = 0; c < result.configs.size(); ++c) {
        std::vector<Outcome> outcomes;
        for (std::size_t rep = 0; rep < reps; ++rep) {
            const auto& record = result.runs[c * reps + rep];
            if (record.outcome) outcomes.push_back(*record.outcome);
            else any_failure = true;
        }
        EnsembleSummary summary;
        if (!outcomes.empty()) summary = aggregate(outcomes);
        result.summaries.push_back(summary);
    }

    if (any_failure) {
        std::ofstream log(std::filesystem::path(out_dir) / "failures.log");
        for (const auto& record : result.runs)
            if (!record.error.empty())
                log << record.label << " seed=" << record.seed << ": " << record.error << '\n';
    }

    std::ofstream summary_out(std::filesystem::path(out_dir) / "summary.csv");
    if (!summary_out) throw Error("cannot write summary.csv in " + out_dir);
    write_summary_csv(result, summary_out);
    return result;
}

} // namespace epidemigrid
