#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <vector>

#include "epidemigrid/error.hpp"
#include "epidemigrid/mapgraph.hpp"
#include "epidemigrid/rng.hpp"

namespace epidemigrid {

enum class Sector : int { NW = 0, N, NE, W, E, SW, S, SE };
constexpr int kSectorCount = 8;

// Road vertices in the boundary band of the map, split into the eight
// compass sectors. Corner sectors are the band intersections; the pure
// N/S/W/E sectors exclude corner-band cells.
struct BoundarySectors {
    std::array<std::vector<std::int32_t>, kSectorCount> vertices;

    const std::vector<std::int32_t>& of(Sector s) const {
        return vertices[static_cast<int>(s)];
    }
    bool all_empty() const {
        return std::all_of(vertices.begin(), vertices.end(),
                           [](const auto& v) { return v.empty(); });
    }
    std::int64_t total() const {
        std::int64_t n = 0;
        for (const auto& v : vertices) n += static_cast<std::int64_t>(v.size());
        return n;
    }
};

inline BoundarySectors build_boundary_sectors(const MapGraph& g, double band_fraction) {
    if (!(band_fraction > 0.0) || !(band_fraction < 0.5))
        throw ConfigInvalid("band fraction must lie in (0, 0.5)");
    BoundarySectors sectors;
    const double north = band_fraction * g.height;
    const double south = (1.0 - band_fraction) * g.height;
    const double west = band_fraction * g.width;
    const double east = (1.0 - band_fraction) * g.width;
    for (std::int32_t v = 0; v < g.vertex_count; ++v) {
        const auto [row, col] = g.coords[v];
        const bool in_n = row < north;
        const bool in_s = row >= south;
        const bool in_w = col < west;
        const bool in_e = col >= east;
        Sector s;
        if (in_n && in_w) s = Sector::NW;
        else if (in_n && in_e) s = Sector::NE;
        else if (in_s && in_w) s = Sector::SW;
        else if (in_s && in_e) s = Sector::SE;
        else if (in_n) s = Sector::N;
        else if (in_s) s = Sector::S;
        else if (in_w) s = Sector::W;
        else if (in_e) s = Sector::E;
        else continue;
        sectors.vertices[static_cast<int>(s)].push_back(v);
    }
    if (sectors.all_empty()) throw NoBoundaryRoad("no road vertex in any boundary band");
    return sectors;
}

// A device moving along a shortest-path trace; its current vertex is always
// trace.vertices[trace_index]. Destination draws come from the device's own
// counter-based stream, so device updates stay schedule-independent.
struct DevicePosition {
    std::int32_t id = 0;
    std::int32_t vertex = 0;
    Path trace;
    std::int32_t trace_index = 0;
    RngStream destination_rng{0, 0, RngPurpose::Destination};
};

// Picks a boundary destination: a sector uniformly among the non-empty ones,
// then a vertex uniformly inside it, never the device's current vertex. A
// sector whose only candidate is the current vertex is resampled.
inline void assign_destination(DevicePosition& dev, const BoundarySectors& sectors,
                               const MapGraph& g, RngStream& rng) {
    bool other_exists = false;
    std::array<int, kSectorCount> nonempty{};
    int nonempty_count = 0;
    for (int s = 0; s < kSectorCount; ++s) {
        const auto& verts = sectors.vertices[s];
        if (verts.empty()) continue;
        nonempty[nonempty_count++] = s;
        if (!other_exists && (verts.size() > 1 || verts.front() != dev.vertex))
            other_exists = true;
    }
    if (nonempty_count == 0) throw NoBoundaryRoad("no boundary sector to draw from");
    if (!other_exists) throw NoDestination("no boundary vertex other than the current one");

    std::int32_t dst = -1;
    while (dst < 0) {
        const auto& verts =
            sectors.vertices[nonempty[rng.uniform_below(static_cast<std::uint64_t>(nonempty_count))]];
        const auto here = std::lower_bound(verts.begin(), verts.end(), dev.vertex);
        if (here != verts.end() && *here == dev.vertex) {
            if (verts.size() == 1) continue; // only the current vertex; resample sector
            auto idx = rng.uniform_below(verts.size() - 1);
            if (idx >= static_cast<std::uint64_t>(here - verts.begin())) ++idx;
            dst = verts[idx];
        } else {
            dst = verts[rng.uniform_below(verts.size())];
        }
    }
    dev.trace = shortest_path(g, dev.vertex, dst);
    dev.trace_index = 0;
}

inline void assign_destination(DevicePosition& dev, const BoundarySectors& sectors,
                               const MapGraph& g) {
    assign_destination(dev, sectors, g, dev.destination_rng);
}

// Places devices independently and uniformly on the graph's road vertices.
// With assign_destinations off (static test mode) each trace degenerates to
// the spawn vertex.
inline std::vector<DevicePosition> spawn_devices(const MapGraph& g, const BoundarySectors& sectors,
                                                 std::int32_t count, std::uint64_t seed,
                                                 bool assign_destinations = true) {
    std::vector<DevicePosition> devices(count);
    for (std::int32_t i = 0; i < count; ++i) {
        auto& dev = devices[i];
        dev.id = i;
        RngStream placement(seed, static_cast<std::uint64_t>(i), RngPurpose::Placement);
        dev.vertex = static_cast<std::int32_t>(
            placement.uniform_below(static_cast<std::uint64_t>(g.vertex_count)));
        dev.destination_rng = RngStream(seed, static_cast<std::uint64_t>(i), RngPurpose::Destination);
        if (assign_destinations) {
            assign_destination(dev, sectors, g);
        } else {
            dev.trace = Path{{dev.vertex}, 0};
            dev.trace_index = 0;
        }
    }
    return devices;
}

// Moves a device one graph edge along its trace; on arrival a fresh
// destination is assigned first, so devices never stall.
inline void advance(DevicePosition& dev, const BoundarySectors& sectors, const MapGraph& g) {
    if (static_cast<std::size_t>(dev.trace_index) + 1 >= dev.trace.length()) {
        assign_destination(dev, sectors, g);
        dev.trace_index = 0;
    }
    ++dev.trace_index;
    dev.vertex = dev.trace.vertices[dev.trace_index];
}

} // namespace epidemigrid
