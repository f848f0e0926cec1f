#pragma once

#include <cstdint>

#include "epidemigrid/pgm.hpp"

namespace epidemigrid {

// Synthetic grayscale maps for benchmarks and tests. Road pixels are 0,
// obstacle pixels 255, matching the default binarize threshold.

inline GrayImage all_road_image(int width, int height) {
    GrayImage img;
    img.width = width;
    img.height = height;
    img.pixels.assign(static_cast<std::size_t>(width) * height, 0);
    return img;
}

inline GrayImage corridor_image(int length) {
    return all_road_image(length, 1);
}

// Manhattan-style block map: square obstacle blocks separated by streets of
// the given width. With block=6 and street=4 roughly 64% of the map is road.
inline GrayImage city_blocks_image(int width, int height, int block = 6, int street = 4) {
    GrayImage img = all_road_image(width, height);
    const int pitch = block + street;
    for (int r = 0; r < height; ++r) {
        for (int c = 0; c < width; ++c) {
            const bool in_block_row = (r % pitch) >= street;
            const bool in_block_col = (c % pitch) >= street;
            if (in_block_row && in_block_col)
                img.pixels[static_cast<std::size_t>(r) * width + c] = 255;
        }
    }
    return img;
}

} // namespace epidemigrid
