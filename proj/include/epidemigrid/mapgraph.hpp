#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <ostream>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include "epidemigrid/error.hpp"
#include "epidemigrid/mapgrid.hpp"

namespace epidemigrid {

struct GridPoint {
    int row = 0;
    int col = 0;
    friend bool operator==(const GridPoint&, const GridPoint&) = default;
};

// Edge weight between two road cells from their attraction levels: hotter
// endpoints make the edge cheaper, down to 1 for a hot-hot pair.
inline std::int32_t edge_weight(int w_u, int w_v) {
    if (!is_legal_attraction(w_u) || !is_legal_attraction(w_v))
        throw IllegalWeight("attraction levels must be 1, 5 or 10");
    return (10 - w_u) + (10 - w_v) + 1;
}

// Weighted undirected graph over the road cells of the largest component,
// 8-neighborhood adjacency, vertex ids dense in row-major cell order.
struct MapGraph {
    struct Arc {
        std::int32_t to;
        std::int32_t weight;
        friend bool operator==(const Arc&, const Arc&) = default;
    };

    int width = 0;
    int height = 0;
    std::int32_t vertex_count = 0;
    std::vector<std::int32_t> cell_to_vertex; // per cell, -1 when not a graph vertex
    std::vector<GridPoint> coords;            // per vertex
    std::vector<std::int32_t> offsets;        // CSR, size vertex_count + 1
    std::vector<Arc> arcs;                    // per-vertex lists sorted by target id
    bool uniform_weights = true;
    std::int32_t common_weight = 0;

    std::span<const Arc> neighbors(std::int32_t v) const {
        return {arcs.data() + offsets[v], arcs.data() + offsets[v + 1]};
    }
    std::int32_t vertex_at(int row, int col) const {
        return cell_to_vertex[static_cast<std::size_t>(row) * width + col];
    }
    std::int64_t edge_count() const { return static_cast<std::int64_t>(arcs.size()) / 2; }
};

struct Path {
    std::vector<std::int32_t> vertices;
    std::int64_t total_cost = 0;

    std::size_t length() const { return vertices.size(); }
    friend bool operator==(const Path&, const Path&) = default;
};

inline MapGraph build_map_graph(const OccupancyGrid& grid, const AttractionGrid& attraction,
                                const ComponentMask& mask) {
    if (attraction.width != grid.width || attraction.height != grid.height ||
        mask.width != grid.width || mask.height != grid.height)
        throw DimensionMismatch("grid, attraction and mask dimensions differ");

    MapGraph g;
    g.width = grid.width;
    g.height = grid.height;
    g.cell_to_vertex.assign(grid.size(), -1);

    for (int r = 0; r < grid.height; ++r)
        for (int c = 0; c < grid.width; ++c)
            if (mask.label_at(r, c) == mask.largest_id) {
                g.cell_to_vertex[grid.cell_index(r, c)] = g.vertex_count++;
                g.coords.push_back({r, c});
            }
    if (g.vertex_count == 0) throw EmptyGraph("largest component is empty");

    g.offsets.assign(static_cast<std::size_t>(g.vertex_count) + 1, 0);
    // Neighbor offsets enumerated in row-major order, so each arc list comes
    // out already sorted by target id.
    for (std::int32_t v = 0; v < g.vertex_count; ++v) {
        const auto [row, col] = g.coords[v];
        const int wu = attraction.at(row, col);
        for (int dr = -1; dr <= 1; ++dr) {
            for (int dc = -1; dc <= 1; ++dc) {
                if (dr == 0 && dc == 0) continue;
                const int nr = row + dr, nc = col + dc;
                if (nr < 0 || nr >= g.height || nc < 0 || nc >= g.width) continue;
                const std::int32_t u = g.vertex_at(nr, nc);
                if (u < 0) continue;
                const std::int32_t w = edge_weight(wu, attraction.at(nr, nc));
                g.arcs.push_back({u, w});
                ++g.offsets[static_cast<std::size_t>(v) + 1];
            }
        }
    }
    for (std::size_t v = 1; v < g.offsets.size(); ++v) g.offsets[v] += g.offsets[v - 1];

    g.common_weight = g.arcs.empty() ? 0 : g.arcs.front().weight;
    g.uniform_weights = std::all_of(g.arcs.begin(), g.arcs.end(),
                                    [&](const MapGraph::Arc& a) { return a.weight == g.common_weight; });
    return g;
}

namespace detail {

constexpr std::int64_t kInfCost = std::numeric_limits<std::int64_t>::max();

// Backward walk over the canonical predecessor array.
inline Path rebuild_path(const std::vector<std::int32_t>& pred, std::int32_t src, std::int32_t dst,
                         std::int64_t cost) {
    Path p;
    p.total_cost = cost;
    for (std::int32_t v = dst; v != src; v = pred[v]) p.vertices.push_back(v);
    p.vertices.push_back(src);
    std::reverse(p.vertices.begin(), p.vertices.end());
    return p;
}

// Uniform-weight specialization: plain BFS layers. Produces the same
// distances and the same min-id predecessors as Dijkstra below.
inline Path bfs_path(const MapGraph& g, std::int32_t src, std::int32_t dst) {
    std::vector<std::int32_t> dist_hops(g.vertex_count, -1);
    std::vector<std::int32_t> pred(g.vertex_count, -1);
    std::vector<std::int32_t> queue;
    queue.reserve(64);
    queue.push_back(src);
    dist_hops[src] = 0;
    std::size_t head = 0;
    while (head < queue.size()) {
        const std::int32_t u = queue[head++];
        if (u == dst) break;
        for (const auto& arc : g.neighbors(u)) {
            if (dist_hops[arc.to] == -1) {
                dist_hops[arc.to] = dist_hops[u] + 1;
                pred[arc.to] = u;
                queue.push_back(arc.to);
            } else if (dist_hops[arc.to] == dist_hops[u] + 1 && u < pred[arc.to]) {
                pred[arc.to] = u;
            }
        }
    }
    if (dist_hops[dst] == -1) throw Unreachable("no path between vertices");
    return rebuild_path(pred, src, dst,
                        static_cast<std::int64_t>(dist_hops[dst]) * g.common_weight);
}

} // namespace detail

// Minimum-cost path under Dijkstra semantics. Ties are broken by preferring
// the lower-id predecessor, which makes traces reproducible across platforms.
inline Path shortest_path(const MapGraph& g, std::int32_t src, std::int32_t dst) {
    if (src < 0 || src >= g.vertex_count || dst < 0 || dst >= g.vertex_count)
        throw Error("vertex id out of range");
    if (src == dst) return Path{{src}, 0};
    if (g.uniform_weights) return detail::bfs_path(g, src, dst);

    std::vector<std::int64_t> dist(g.vertex_count, detail::kInfCost);
    std::vector<std::int32_t> pred(g.vertex_count, -1);
    std::vector<bool> settled(g.vertex_count, false);

    using Entry = std::pair<std::int64_t, std::int32_t>; // (cost, vertex)
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    dist[src] = 0;
    heap.push({0, src});

    while (!heap.empty()) {
        const auto [d, u] = heap.top();
        heap.pop();
        if (settled[u]) continue;
        settled[u] = true;
        if (u == dst) break;
        for (const auto& arc : g.neighbors(u)) {
            const std::int64_t cand = d + arc.weight;
            if (cand < dist[arc.to]) {
                dist[arc.to] = cand;
                pred[arc.to] = u;
                heap.push({cand, arc.to});
            } else if (cand == dist[arc.to] && u < pred[arc.to]) {
                pred[arc.to] = u;
            }
        }
    }
    if (!settled[dst]) throw Unreachable("no path between vertices");
    return detail::rebuild_path(pred, src, dst, dist[dst]);
}

// Debug dump: one `u v weight` line per undirected edge, for cross-checking
// against external tools.
inline void dump_edge_list(const MapGraph& g, std::ostream& out) {
    for (std::int32_t v = 0; v < g.vertex_count; ++v)
        for (const auto& arc : g.neighbors(v))
            if (v < arc.to) out << v << ' ' << arc.to << ' ' << arc.weight << '\n';
}

} // namespace epidemigrid
