#pragma once

#include <cstdint>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "epidemigrid/epidemic.hpp"
#include "epidemigrid/error.hpp"
#include "epidemigrid/mapgraph.hpp"
#include "epidemigrid/mapgrid.hpp"
#include "epidemigrid/mobility.hpp"
#include "epidemigrid/pgm.hpp"

namespace epidemigrid {

struct SimulationConfig {
    std::string map_path;
    std::string attraction_path; // empty = all-cold default
    int threshold = 128;
    bool invert = false;
    std::int32_t n_infected = 20;
    std::int32_t n_susceptible = 80;
    std::int32_t packets = 3;
    std::int32_t rt_min = 1;
    std::int32_t rt_max = 5;
    double radius = 3.0;
    std::int32_t speed = 1; // graph edges per simulation step
    double band_fraction = 0.05;
    std::int64_t max_steps = 5000;
    std::uint64_t seed = 0;
    bool reset_on_disconnect = false;
    bool static_devices = false;
    bool record_traces = false; // keep per-step device positions for replay
    // Optional pinned spawn cells (row, col), one per device in id order;
    // overrides random placement. Used by micro-dynamics tests.
    std::vector<GridPoint> initial_cells;
};

inline void validate(const SimulationConfig& cfg) {
    if (cfg.n_infected < 0 || cfg.n_susceptible < 0)
        throw ConfigInvalid("device counts must be non-negative");
    if (cfg.n_infected + cfg.n_susceptible < 1)
        throw ConfigInvalid("need at least one device");
    if (cfg.packets < 1) throw ConfigInvalid("packets must be >= 1");
    if (cfg.rt_min < 1 || cfg.rt_min > cfg.rt_max)
        throw ConfigInvalid("response-time interval needs 1 <= rt_min <= rt_max");
    if (!(cfg.radius > 0.0)) throw ConfigInvalid("radius must be positive");
    if (cfg.speed < 1) throw ConfigInvalid("speed must be >= 1");
    if (!(cfg.band_fraction > 0.0) || !(cfg.band_fraction < 0.5))
        throw ConfigInvalid("band fraction must lie in (0, 0.5)");
    if (cfg.max_steps < 1) throw ConfigInvalid("max-steps must be >= 1");
    if (cfg.threshold < 0 || cfg.threshold > 255)
        throw ConfigInvalid("threshold must lie in [0, 255]");
    if (!cfg.initial_cells.empty() &&
        cfg.initial_cells.size() !=
            static_cast<std::size_t>(cfg.n_infected) + static_cast<std::size_t>(cfg.n_susceptible))
        throw ConfigInvalid("initial cell list must cover every device");
}

// One row of the recorded time series; row 0 holds the initial populations
// before any transmission.
struct TimeSeriesRecord {
    std::int64_t step = 0;
    std::int64_t susceptible = 0;
    std::int64_t infected = 0;
    std::int64_t repaired = 0;
    double cover_i = 0.0;
    double cover_s = 0.0;
    double rate_is = 0.0;
    double rate_si = 0.0;
    double density = 0.0;
    std::int64_t cumulative_infected = 0;

    friend bool operator==(const TimeSeriesRecord&, const TimeSeriesRecord&) = default;
};

struct TimeSeries {
    std::vector<TimeSeriesRecord> records;

    const TimeSeriesRecord& back() const { return records.back(); }
    std::size_t size() const { return records.size(); }
    friend bool operator==(const TimeSeries&, const TimeSeries&) = default;
};

enum class OutcomeKind { Prevented, Pandemic, Censored };

struct Outcome {
    OutcomeKind kind = OutcomeKind::Censored;
    std::optional<std::int64_t> extinction_step; // first step with |I| = 0
    std::optional<std::int64_t> pandemic_step;   // first step with cumulative = total
    std::int64_t peak_infected = 0;
    std::int64_t peak_step = 0;
};

inline const char* to_string(OutcomeKind kind) {
    switch (kind) {
    case OutcomeKind::Prevented: return "Prevented";
    case OutcomeKind::Pandemic: return "Pandemic";
    case OutcomeKind::Censored: return "Censored";
    }
    return "?";
}

enum class EventKind : std::uint8_t { Infected, Repaired };

struct Event {
    std::int64_t step = 0;
    EventKind kind = EventKind::Infected;
    std::int32_t device = 0;
};

struct TraceEntry {
    std::int64_t step = 0;
    std::int32_t device = 0;
    GridPoint cell;
};

struct SimulationResult {
    TimeSeries series;
    Outcome outcome;
    std::vector<Event> events;
    std::vector<TraceEntry> trace_log; // filled when record_traces is set
};

inline Outcome classify_outcome(const TimeSeries& ts, std::int64_t total_devices,
                                std::int64_t max_steps) {
    if (ts.records.empty()) throw Error("cannot classify an empty time series");
    Outcome out;
    out.peak_infected = -1;
    for (const auto& rec : ts.records) {
        if (rec.infected > out.peak_infected) {
            out.peak_infected = rec.infected;
            out.peak_step = rec.step;
        }
        if (!out.pandemic_step && rec.cumulative_infected >= total_devices)
            out.pandemic_step = rec.step;
        if (!out.extinction_step && rec.infected == 0) out.extinction_step = rec.step;
    }
    (void)max_steps; // the series never extends past it
    if (out.pandemic_step) out.kind = OutcomeKind::Pandemic;
    else if (out.extinction_step) out.kind = OutcomeKind::Prevented;
    else out.kind = OutcomeKind::Censored;
    return out;
}

namespace detail {

inline TimeSeriesRecord make_record(std::int64_t step, const PopulationCounts& counts,
                                    std::int64_t map_vertices) {
    TimeSeriesRecord rec;
    rec.step = step;
    rec.susceptible = counts.susceptible;
    rec.infected = counts.infected;
    rec.repaired = counts.repaired;
    rec.cover_i = state_cover(counts, Condition::Infected);
    rec.cover_s = state_cover(counts, Condition::Susceptible);
    rec.rate_is = state_rate(counts.infected, counts.susceptible);
    rec.rate_si = state_rate(counts.susceptible, counts.infected);
    rec.density = network_density(counts, map_vertices);
    rec.cumulative_infected = counts.cumulative_infected();
    return rec;
}

} // namespace detail

// Core loop over a prepared world. Each step applies the fixed phase order:
// move, contact, transmit, repair, record. A device infected at step k first
// transmits at step k+1 and can never be repaired in its infection step.
inline SimulationResult simulate(const OccupancyGrid& grid, const AttractionGrid& attraction,
                                 const SimulationConfig& cfg) {
    validate(cfg);
    const ComponentMask mask = largest_component(grid);
    const MapGraph graph = build_map_graph(grid, attraction, mask);
    const BoundarySectors sectors =
        cfg.static_devices ? BoundarySectors{} : build_boundary_sectors(graph, cfg.band_fraction);

    const std::int32_t total = cfg.n_infected + cfg.n_susceptible;
    std::vector<DevicePosition> devices =
        spawn_devices(graph, sectors, total, cfg.seed, !cfg.static_devices);
    if (!cfg.initial_cells.empty()) {
        for (std::int32_t i = 0; i < total; ++i) {
            const auto [row, col] = cfg.initial_cells[i];
            const std::int32_t v = graph.vertex_at(row, col);
            if (v < 0) throw ConfigInvalid("initial cell is not on the largest road component");
            devices[i].vertex = v;
            devices[i].trace = Path{{v}, 0};
            devices[i].trace_index = 0;
            if (!cfg.static_devices) assign_destination(devices[i], sectors, graph);
        }
    }

    const Malware malware{cfg.packets};
    const CounterMeasurePolicy policy{cfg.rt_min, cfg.rt_max};

    SimulationResult result;
    std::vector<EpidemicState> states(total);
    for (std::int32_t i = 0; i < cfg.n_infected; ++i) {
        auto& st = states[i];
        st.condition = Condition::Infected;
        st.infected_at = 0;
        RngStream response(cfg.seed, static_cast<std::uint64_t>(i), RngPurpose::Response);
        st.response_steps = draw_response_steps(policy, malware, response);
        result.events.push_back({0, EventKind::Infected, i});
    }

    std::vector<GridPoint> positions(total);
    auto refresh_positions = [&] {
        for (std::int32_t i = 0; i < total; ++i) positions[i] = graph.coords[devices[i].vertex];
    };
    refresh_positions();
    auto record_traces = [&](std::int64_t step) {
        if (!cfg.record_traces) return;
        for (std::int32_t i = 0; i < total; ++i)
            result.trace_log.push_back({step, i, positions[i]});
    };
    record_traces(0);

    PopulationCounts counts = count_states(states);
    result.series.records.push_back(detail::make_record(0, counts, graph.vertex_count));

    for (std::int64_t step = 1; counts.infected > 0 && step <= cfg.max_steps; ++step) {
        if (!cfg.static_devices) {
            for (auto& dev : devices)
                for (std::int32_t hop = 0; hop < cfg.speed; ++hop) advance(dev, sectors, graph);
            refresh_positions();
        }
        record_traces(step);

        const ProximityGraph contacts = build_proximity_graph(positions, states, cfg.radius);
        const auto infected_now =
            transmit(contacts, states, malware, policy, step, cfg.seed, cfg.reset_on_disconnect);
        for (const auto d : infected_now) result.events.push_back({step, EventKind::Infected, d});

        const auto repaired_now = apply_countermeasure(states, step);
        for (const auto d : repaired_now) result.events.push_back({step, EventKind::Repaired, d});

        counts = count_states(states);
        result.series.records.push_back(detail::make_record(step, counts, graph.vertex_count));
    }

    result.outcome = classify_outcome(result.series, total, cfg.max_steps);
    return result;
}

// File-loading front end.
inline SimulationResult simulate(const SimulationConfig& cfg) {
    validate(cfg);
    if (cfg.map_path.empty()) throw ConfigInvalid("map path is required");
    const GrayImage img = load_gray_image(cfg.map_path);
    const OccupancyGrid grid = binarize(img, cfg.threshold, cfg.invert);
    const AttractionGrid attraction = load_attraction(cfg.attraction_path, grid);
    return simulate(grid, attraction, cfg);
}

// CSV layout: one comment line carrying the audited configuration, a fixed
// header, then one row per recorded step with ratios at six decimals.
inline void write_timeseries_csv(const TimeSeries& ts, const SimulationConfig& cfg,
                                 std::ostream& out) {
    out << "# epidemigrid seed=" << cfg.seed << " rt=" << cfg.rt_min << ":" << cfg.rt_max
        << " packets=" << cfg.packets << " infected=" << cfg.n_infected
        << " susceptible=" << cfg.n_susceptible << " radius=" << cfg.radius
        << " speed=" << cfg.speed << " band=" << cfg.band_fraction
        << " max_steps=" << cfg.max_steps << "\n";
    out << "step,susceptible,infected,repaired,cover_i,cover_s,rate_is,rate_si,density,"
           "cumulative_infected\n";
    char ratios[128];
    for (const auto& rec : ts.records) {
        std::snprintf(ratios, sizeof(ratios), "%.6f,%.6f,%.6f,%.6f,%.6f", rec.cover_i, rec.cover_s,
                      rec.rate_is, rec.rate_si, rec.density);
        out << rec.step << ',' << rec.susceptible << ',' << rec.infected << ',' << rec.repaired
            << ',' << ratios << ',' << rec.cumulative_infected << '\n';
    }
}

inline void write_event_log(const std::vector<Event>& events, std::ostream& out) {
    out << "step,event,device_id\n";
    for (const auto& e : events)
        out << e.step << ',' << (e.kind == EventKind::Infected ? "infected" : "repaired") << ','
            << e.device << '\n';
}

inline void write_trace_log(const std::vector<TraceEntry>& trace_log, std::ostream& out) {
    out << "step,device_id,row,col\n";
    for (const auto& t : trace_log)
        out << t.step << ',' << t.device << ',' << t.cell.row << ',' << t.cell.col << '\n';
}

// One-line human summary of a finished run.
inline std::string summarize(const Outcome& outcome) {
    std::string line = "outcome=";
    line += to_string(outcome.kind);
    line += " peak_infected=" + std::to_string(outcome.peak_infected);
    line += " peak_step=" + std::to_string(outcome.peak_step);
    if (outcome.pandemic_step) line += " pandemic_step=" + std::to_string(*outcome.pandemic_step);
    if (outcome.extinction_step)
        line += " extinction_step=" + std::to_string(*outcome.extinction_step);
    return line;
}

} // namespace epidemigrid
