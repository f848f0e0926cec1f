#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "epidemigrid/error.hpp"
#include "epidemigrid/pgm.hpp"

namespace epidemigrid {

constexpr std::uint8_t kRoad = 0;
constexpr std::uint8_t kObstacle = 255;

// Road/obstacle matrix of the city: 0 marks a road cell, 255 an obstacle.
struct OccupancyGrid {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> cells; // row-major, values in {0, 255}

    bool is_road(int row, int col) const {
        return cells[static_cast<std::size_t>(row) * width + col] == kRoad;
    }
    std::size_t cell_index(int row, int col) const {
        return static_cast<std::size_t>(row) * width + col;
    }
    std::size_t size() const { return cells.size(); }

    std::int64_t road_count() const {
        std::int64_t n = 0;
        for (auto c : cells) n += (c == kRoad);
        return n;
    }
};

// Per-cell attraction level: 1 (cold), 5 (warm) or 10 (hot) on road cells,
// 0 on obstacle cells where the weight is undefined.
struct AttractionGrid {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> weights;

    std::uint8_t at(int row, int col) const {
        return weights[static_cast<std::size_t>(row) * width + col];
    }
};

// Connected-component labels over road cells, 8-neighborhood.
struct ComponentMask {
    int width = 0;
    int height = 0;
    std::vector<std::int32_t> labels; // per cell; -1 on obstacles
    std::vector<std::int64_t> sizes;  // per label
    std::int32_t largest_id = -1;

    std::int32_t label_at(int row, int col) const {
        return labels[static_cast<std::size_t>(row) * width + col];
    }
};

inline bool is_legal_attraction(int w) { return w == 1 || w == 5 || w == 10; }

// Thresholds a gray image into the road/obstacle grid. Without invert, dark
// pixels (< threshold) become road; invert flips the mapping.
inline OccupancyGrid binarize(const GrayImage& img, int threshold, bool invert = false) {
    OccupancyGrid grid;
    grid.width = img.width;
    grid.height = img.height;
    grid.cells.resize(img.pixels.size());
    std::int64_t roads = 0;
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
        const bool road = (img.pixels[i] < threshold) != invert;
        grid.cells[i] = road ? kRoad : kObstacle;
        roads += road;
    }
    if (roads == 0) throw AllObstacle("binarize left no road cell");
    return grid;
}

// Attraction weights from an in-memory sidecar image. Road cells must carry
// a value in {1,5,10}; obstacle cells are ignored.
inline AttractionGrid attraction_from_image(const GrayImage& img, const OccupancyGrid& grid) {
    if (img.width != grid.width || img.height != grid.height)
        throw DimensionMismatch("attraction sidecar dimensions differ from map");
    AttractionGrid attr;
    attr.width = grid.width;
    attr.height = grid.height;
    attr.weights.assign(grid.size(), 0);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid.cells[i] != kRoad) continue;
        const int w = img.pixels[i];
        if (!is_legal_attraction(w))
            throw IllegalWeight("attraction value " + std::to_string(w) +
                                " on a road cell (want 1, 5 or 10)");
        attr.weights[i] = static_cast<std::uint8_t>(w);
    }
    return attr;
}

// All-cold default: every road cell gets w=1.
inline AttractionGrid default_attraction(const OccupancyGrid& grid) {
    AttractionGrid attr;
    attr.width = grid.width;
    attr.height = grid.height;
    attr.weights.assign(grid.size(), 0);
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (grid.cells[i] == kRoad) attr.weights[i] = 1;
    return attr;
}

inline AttractionGrid load_attraction(const std::string& path, const OccupancyGrid& grid) {
    if (path.empty()) return default_attraction(grid);
    return attraction_from_image(load_gray_image(path), grid);
}

// Flood-fill labelling of road cells under 8-neighborhood; labels are dense
// in discovery (row-major) order. Ties on the largest size go to the
// smallest label.
inline ComponentMask largest_component(const OccupancyGrid& grid) {
    ComponentMask mask;
    mask.width = grid.width;
    mask.height = grid.height;
    mask.labels.assign(grid.size(), -1);

    std::vector<std::size_t> stack;
    for (int r = 0; r < grid.height; ++r) {
        for (int c = 0; c < grid.width; ++c) {
            const std::size_t start = grid.cell_index(r, c);
            if (grid.cells[start] != kRoad || mask.labels[start] != -1) continue;
            const auto label = static_cast<std::int32_t>(mask.sizes.size());
            std::int64_t count = 0;
            mask.labels[start] = label;
            stack.push_back(start);
            while (!stack.empty()) {
                const std::size_t idx = stack.back();
                stack.pop_back();
                ++count;
                const int row = static_cast<int>(idx) / grid.width;
                const int col = static_cast<int>(idx) % grid.width;
                for (int dr = -1; dr <= 1; ++dr) {
                    for (int dc = -1; dc <= 1; ++dc) {
                        if (dr == 0 && dc == 0) continue;
                        const int nr = row + dr, nc = col + dc;
                        if (nr < 0 || nr >= grid.height || nc < 0 || nc >= grid.width) continue;
                        const std::size_t nidx = grid.cell_index(nr, nc);
                        if (grid.cells[nidx] != kRoad || mask.labels[nidx] != -1) continue;
                        mask.labels[nidx] = label;
                        stack.push_back(nidx);
                    }
                }
            }
            mask.sizes.push_back(count);
        }
    }
    if (mask.sizes.empty()) throw AllObstacle("grid has no road cell");

    mask.largest_id = 0;
    for (std::size_t l = 1; l < mask.sizes.size(); ++l)
        if (mask.sizes[l] > mask.sizes[mask.largest_id])
            mask.largest_id = static_cast<std::int32_t>(l);
    return mask;
}

} // namespace epidemigrid
