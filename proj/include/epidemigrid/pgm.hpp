#pragma once

#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "epidemigrid/error.hpp"

namespace epidemigrid {

struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels; // row-major, size == width * height

    std::uint8_t at(int row, int col) const {
        return pixels[static_cast<std::size_t>(row) * width + col];
    }
    std::size_t size() const { return pixels.size(); }
};

namespace detail {

// Skips PGM whitespace and '#' comments, then reads one unsigned decimal token.
inline long next_pnm_int(const std::string& data, std::size_t& pos, const char* what) {
    for (;;) {
        while (pos < data.size() && std::isspace(static_cast<unsigned char>(data[pos]))) ++pos;
        if (pos < data.size() && data[pos] == '#') {
            while (pos < data.size() && data[pos] != '\n') ++pos;
            continue;
        }
        break;
    }
    if (pos >= data.size() || !std::isdigit(static_cast<unsigned char>(data[pos])))
        throw MalformedImage(std::string("expected integer for ") + what);
    long value = 0;
    while (pos < data.size() && std::isdigit(static_cast<unsigned char>(data[pos]))) {
        value = value * 10 + (data[pos] - '0');
        if (value > 1000000000L) throw MalformedImage(std::string("absurd value for ") + what);
        ++pos;
    }
    return value;
}

} // namespace detail

// Parses a PGM file (P2 ASCII or P5 binary, maxval <= 255) into a GrayImage.
inline GrayImage load_gray_image(const std::string& path) {
    if (!std::filesystem::exists(path)) throw FileNotFound("no such file: " + path);
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileNotFound("cannot open: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string data = buf.str();

    if (data.size() < 2 || data[0] != 'P' || (data[1] != '2' && data[1] != '5'))
        throw MalformedImage("bad magic in " + path + " (want P2 or P5)");
    const bool binary = data[1] == '5';

    std::size_t pos = 2;
    const long width = detail::next_pnm_int(data, pos, "width");
    const long height = detail::next_pnm_int(data, pos, "height");
    const long maxval = detail::next_pnm_int(data, pos, "maxval");
    if (width < 1 || height < 1) throw MalformedImage("non-positive dimensions in " + path);
    if (maxval < 1 || maxval > 255) throw MalformedImage("maxval out of range in " + path);

    GrayImage img;
    img.width = static_cast<int>(width);
    img.height = static_cast<int>(height);
    const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    img.pixels.resize(count);

    if (binary) {
        // Exactly one whitespace byte separates the header from the raster.
        if (pos >= data.size() || !std::isspace(static_cast<unsigned char>(data[pos])))
            throw MalformedImage("missing raster separator in " + path);
        ++pos;
        if (data.size() - pos < count) throw MalformedImage("truncated raster in " + path);
        for (std::size_t i = 0; i < count; ++i) {
            const auto v = static_cast<std::uint8_t>(data[pos + i]);
            if (v > maxval) throw MalformedImage("pixel exceeds maxval in " + path);
            img.pixels[i] = v;
        }
    } else {
        for (std::size_t i = 0; i < count; ++i) {
            const long v = detail::next_pnm_int(data, pos, "pixel");
            if (v > maxval) throw MalformedImage("pixel exceeds maxval in " + path);
            img.pixels[i] = static_cast<std::uint8_t>(v);
        }
    }
    return img;
}

inline void save_pgm(const GrayImage& img, const std::string& path, bool binary = true) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write: " + path);
    out << (binary ? "P5" : "P2") << "\n" << img.width << " " << img.height << "\n255\n";
    if (binary) {
        out.write(reinterpret_cast<const char*>(img.pixels.data()),
                  static_cast<std::streamsize>(img.pixels.size()));
    } else {
        for (int r = 0; r < img.height; ++r) {
            for (int c = 0; c < img.width; ++c) {
                if (c) out << ' ';
                out << static_cast<int>(img.at(r, c));
            }
            out << '\n';
        }
    }
    if (!out) throw Error("short write: " + path);
}

} // namespace epidemigrid
