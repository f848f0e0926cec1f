#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "epidemigrid/mapgraph.hpp"
#include "epidemigrid/mapgrid.hpp"

namespace testsupport {

// Builds an occupancy grid from ASCII art: '.' road, '#' obstacle.
inline epidemigrid::OccupancyGrid grid_from_art(const std::vector<std::string>& rows) {
    epidemigrid::OccupancyGrid grid;
    grid.height = static_cast<int>(rows.size());
    grid.width = static_cast<int>(rows.front().size());
    for (const auto& row : rows)
        for (const char ch : row)
            grid.cells.push_back(ch == '.' ? epidemigrid::kRoad : epidemigrid::kObstacle);
    return grid;
}

// Attraction art: '1', '5', 'X' (=10) on road cells, anything else ignored.
inline epidemigrid::AttractionGrid attraction_from_art(const epidemigrid::OccupancyGrid& grid,
                                                       const std::vector<std::string>& rows) {
    epidemigrid::AttractionGrid attr;
    attr.width = grid.width;
    attr.height = grid.height;
    attr.weights.assign(grid.size(), 0);
    for (int r = 0; r < grid.height; ++r) {
        for (int c = 0; c < grid.width; ++c) {
            if (!grid.is_road(r, c)) continue;
            const char ch = rows[r][c];
            attr.weights[grid.cell_index(r, c)] = ch == 'X' ? 10 : (ch == '5' ? 5 : 1);
        }
    }
    return attr;
}

inline epidemigrid::MapGraph graph_from_art(const std::vector<std::string>& occupancy,
                                            const std::vector<std::string>& attraction = {}) {
    const auto grid = grid_from_art(occupancy);
    const auto attr = attraction.empty() ? epidemigrid::default_attraction(grid)
                                         : attraction_from_art(grid, attraction);
    return epidemigrid::build_map_graph(grid, attr, epidemigrid::largest_component(grid));
}

// Independent shortest-path oracle: exhaustive DFS over simple paths with a
// cost bound. Intended for small graphs only.
inline std::optional<std::int64_t> brute_force_shortest_cost(const epidemigrid::MapGraph& g,
                                                             std::int32_t src, std::int32_t dst) {
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    std::vector<bool> on_path(g.vertex_count, false);
    auto dfs = [&](auto&& self, std::int32_t v, std::int64_t cost) -> void {
        if (v == dst) {
            if (cost < best) best = cost;
            return;
        }
        on_path[v] = true;
        for (const auto& arc : g.neighbors(v)) {
            if (on_path[arc.to]) continue;
            if (cost + arc.weight >= best) continue;
            self(self, arc.to, cost + arc.weight);
        }
        on_path[v] = false;
    };
    dfs(dfs, src, 0);
    if (best == std::numeric_limits<std::int64_t>::max()) return std::nullopt;
    return best;
}

// Unique temporary file path for tests that need disk round-trips.
inline std::string temp_path(const std::string& name) {
    static std::uint64_t counter = 0;
    const auto dir = std::filesystem::temp_directory_path() / "epidemigrid_tests";
    std::filesystem::create_directories(dir);
    return (dir / (std::to_string(++counter) + "_" + name)).string();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return content;
}

} // namespace testsupport
