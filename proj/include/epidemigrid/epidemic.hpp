#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "epidemigrid/error.hpp"
#include "epidemigrid/mapgraph.hpp"
#include "epidemigrid/rng.hpp"

namespace epidemigrid {

enum class Condition : std::uint8_t { Susceptible, Infected, Repaired };

// Per-device epidemic state. A susceptible carries its packet progress; an
// infected device carries its infection step and the step budget until the
// counter-measure fires. Repaired is absorbing.
struct EpidemicState {
    Condition condition = Condition::Susceptible;
    std::int32_t packets_received = 0; // progress while susceptible
    std::int64_t infected_at = -1;
    std::int64_t response_steps = 0;   // t * p, drawn once at infection
};

struct Malware {
    std::int32_t packets = 1; // p >= 1
};

// Response times are integers t drawn from [rt_min, rt_max]; one unit of t
// equals one full-malware transmission, i.e. p simulation steps.
struct CounterMeasurePolicy {
    std::int32_t rt_min = 1;
    std::int32_t rt_max = 1;
};

// Bipartite infected-susceptible contact graph of one simulation step: an
// edge whenever the Euclidean cell distance is strictly below the radius.
struct ProximityGraph {
    double radius = 0.0;
    std::vector<std::pair<std::int32_t, std::int32_t>> edges; // (infected, susceptible)
};

struct PopulationCounts {
    std::int64_t susceptible = 0;
    std::int64_t infected = 0;
    std::int64_t repaired = 0;

    std::int64_t total() const { return susceptible + infected + repaired; }
    // Repair is one-way and only reachable through infection, so every
    // device ever infected is now either infected or repaired.
    std::int64_t cumulative_infected() const { return infected + repaired; }
};

inline PopulationCounts count_states(std::span<const EpidemicState> states) {
    PopulationCounts counts;
    for (const auto& st : states) {
        switch (st.condition) {
        case Condition::Susceptible: ++counts.susceptible; break;
        case Condition::Infected: ++counts.infected; break;
        case Condition::Repaired: ++counts.repaired; break;
        }
    }
    return counts;
}

inline ProximityGraph build_proximity_graph(std::span<const GridPoint> positions,
                                            std::span<const EpidemicState> states, double radius) {
    if (!(radius > 0.0)) throw ConfigInvalid("proximity radius must be positive");
    ProximityGraph g;
    g.radius = radius;
    const double r2 = radius * radius;
    std::vector<std::int32_t> infected, susceptible;
    for (std::int32_t i = 0; i < static_cast<std::int32_t>(states.size()); ++i) {
        if (states[i].condition == Condition::Infected) infected.push_back(i);
        else if (states[i].condition == Condition::Susceptible) susceptible.push_back(i);
    }
    for (const auto i : infected) {
        for (const auto s : susceptible) {
            const double dr = positions[i].row - positions[s].row;
            const double dc = positions[i].col - positions[s].col;
            if (dr * dr + dc * dc < r2) g.edges.emplace_back(i, s);
        }
    }
    return g;
}

inline std::int64_t draw_response_steps(const CounterMeasurePolicy& policy, const Malware& malware,
                                        RngStream& rng) {
    const std::int64_t t = rng.uniform_int(policy.rt_min, policy.rt_max);
    return t * malware.packets;
}

// One transmission round. Every susceptible with at least one infected
// contact gains exactly one packet, however many neighbors it has; progress
// is kept while out of range unless reset_on_disconnect is set. A device
// whose progress reaches p flips to Infected and draws its response budget.
inline std::vector<std::int32_t> transmit(const ProximityGraph& g, std::span<EpidemicState> states,
                                          const Malware& malware, const CounterMeasurePolicy& policy,
                                          std::int64_t step, std::uint64_t seed,
                                          bool reset_on_disconnect = false) {
    std::vector<bool> contacted(states.size(), false);
    for (const auto& e : g.edges) contacted[e.second] = true;

    std::vector<std::int32_t> newly_infected;
    for (std::int32_t d = 0; d < static_cast<std::int32_t>(states.size()); ++d) {
        auto& st = states[d];
        if (st.condition != Condition::Susceptible) continue;
        if (!contacted[d]) {
            if (reset_on_disconnect) st.packets_received = 0;
            continue;
        }
        ++st.packets_received;
        if (st.packets_received >= malware.packets) {
            st.condition = Condition::Infected;
            st.infected_at = step;
            RngStream response(seed, static_cast<std::uint64_t>(d), RngPurpose::Response);
            st.response_steps = draw_response_steps(policy, malware, response);
            newly_infected.push_back(d);
        }
    }
    return newly_infected;
}

// Sanitizes every infected device whose response budget has elapsed.
inline std::vector<std::int32_t> apply_countermeasure(std::span<EpidemicState> states,
                                                      std::int64_t step) {
    std::vector<std::int32_t> repaired;
    for (std::int32_t d = 0; d < static_cast<std::int32_t>(states.size()); ++d) {
        auto& st = states[d];
        if (st.condition == Condition::Infected && step - st.infected_at >= st.response_steps) {
            st.condition = Condition::Repaired;
            repaired.push_back(d);
        }
    }
    return repaired;
}

// C(tau): fraction of the population currently in the given state.
inline double state_cover(const PopulationCounts& counts, Condition which) {
    const std::int64_t total = counts.total();
    std::int64_t n = 0;
    switch (which) {
    case Condition::Susceptible: n = counts.susceptible; break;
    case Condition::Infected: n = counts.infected; break;
    case Condition::Repaired: n = counts.repaired; break;
    }
    return static_cast<double>(n) / static_cast<double>(total);
}

// R(tau1, tau2) = |tau1| / (|tau2| + 1).
inline double state_rate(std::int64_t a, std::int64_t b) {
    return static_cast<double>(a) / static_cast<double>(b + 1);
}

// D = (|I| + |S|) / |V(G_map)|; repaired devices no longer count.
inline double network_density(const PopulationCounts& counts, std::int64_t map_vertices) {
    return static_cast<double>(counts.infected + counts.susceptible) /
           static_cast<double>(map_vertices);
}

} // namespace epidemigrid
