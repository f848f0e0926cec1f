#include <catch2/catch_amalgamated.hpp>

#include "epidemigrid/mapgrid.hpp"
#include "epidemigrid/pgm.hpp"
#include "epidemigrid/rng.hpp"
#include "support/helpers.hpp"

using namespace epidemigrid;
using testsupport::grid_from_art;
using testsupport::temp_path;
using testsupport::write_file;

TEST_CASE("P2 image parses to exact pixel values") {
    const auto path = temp_path("tiny.pgm");
    write_file(path, "P2\n2 2\n255\n0 0 255 255\n");
    const GrayImage img = load_gray_image(path);
    REQUIRE(img.width == 2);
    REQUIRE(img.height == 2);
    REQUIRE(img.pixels == std::vector<std::uint8_t>{0, 0, 255, 255});
}

TEST_CASE("P2 tolerates comments and odd whitespace") {
    const auto path = temp_path("comments.pgm");
    write_file(path, "P2\n# a map\n 3 1 # trailing\n255\n7\n8\t9");
    const GrayImage img = load_gray_image(path);
    REQUIRE(img.pixels == std::vector<std::uint8_t>{7, 8, 9});
}

TEST_CASE("P5 binary image round-trips") {
    const auto path = temp_path("bin.pgm");
    std::string data = "P5\n4 3\n255\n";
    data.append(12, static_cast<char>(128));
    write_file(path, data);
    const GrayImage img = load_gray_image(path);
    REQUIRE(img.size() == 12);
    REQUIRE(std::all_of(img.pixels.begin(), img.pixels.end(), [](auto v) { return v == 128; }));
}

TEST_CASE("malformed images are rejected") {
    const auto empty = temp_path("empty.pgm");
    write_file(empty, "");
    REQUIRE_THROWS_AS(load_gray_image(empty), MalformedImage);

    const auto magic = temp_path("magic.pgm");
    write_file(magic, "P6\n2 2\n255\n0 0 0 0");
    REQUIRE_THROWS_AS(load_gray_image(magic), MalformedImage);

    const auto truncated = temp_path("short.pgm");
    write_file(truncated, std::string("P5\n4 4\n255\n") + std::string(3, '\0'));
    REQUIRE_THROWS_AS(load_gray_image(truncated), MalformedImage);

    const auto deep = temp_path("deep.pgm");
    write_file(deep, "P2\n1 1\n65535\n1000\n");
    REQUIRE_THROWS_AS(load_gray_image(deep), MalformedImage);

    REQUIRE_THROWS_AS(load_gray_image(temp_path("missing.pgm")), FileNotFound);
}

TEST_CASE("save_pgm and load_gray_image round-trip both formats") {
    GrayImage img;
    img.width = 3;
    img.height = 2;
    img.pixels = {0, 10, 255, 128, 5, 1};
    for (const bool binary : {true, false}) {
        const auto path = temp_path(binary ? "rt_p5.pgm" : "rt_p2.pgm");
        save_pgm(img, path, binary);
        const GrayImage back = load_gray_image(path);
        REQUIRE(back.width == img.width);
        REQUIRE(back.height == img.height);
        REQUIRE(back.pixels == img.pixels);
    }
}

TEST_CASE("binarize maps intensities to road and obstacle") {
    GrayImage img;
    img.width = 2;
    img.height = 1;

    img.pixels = {0, 255};
    REQUIRE(binarize(img, 128).cells == std::vector<std::uint8_t>{0, 255});

    img.pixels = {100, 200};
    REQUIRE(binarize(img, 128, true).cells == std::vector<std::uint8_t>{255, 0});

    img.pixels = {255, 255};
    REQUIRE_THROWS_AS(binarize(img, 128), AllObstacle);
}

TEST_CASE("binarize is idempotent on an occupancy grid") {
    RngStream rng(11, 0, RngPurpose::Placement);
    for (int trial = 0; trial < 25; ++trial) {
        GrayImage img;
        img.width = 1 + static_cast<int>(rng.uniform_below(9));
        img.height = 1 + static_cast<int>(rng.uniform_below(9));
        img.pixels.resize(static_cast<std::size_t>(img.width) * img.height);
        for (auto& p : img.pixels) p = static_cast<std::uint8_t>(rng.uniform_below(256));
        img.pixels.front() = 0; // keep one road cell

        const OccupancyGrid grid = binarize(img, 128);
        GrayImage reinterpreted{grid.width, grid.height, grid.cells};
        REQUIRE(binarize(reinterpreted, 128).cells == grid.cells);

        std::int64_t obstacles = 0;
        for (auto c : grid.cells) obstacles += (c == kObstacle);
        REQUIRE(grid.road_count() + obstacles ==
                static_cast<std::int64_t>(grid.width) * grid.height);
    }
}

TEST_CASE("default attraction marks exactly the road cells cold") {
    const auto grid = grid_from_art({"..#", "#.#"});
    const AttractionGrid attr = default_attraction(grid);
    for (int r = 0; r < grid.height; ++r)
        for (int c = 0; c < grid.width; ++c)
            REQUIRE(attr.at(r, c) == (grid.is_road(r, c) ? 1 : 0));
}

TEST_CASE("attraction sidecar round-trips legal weights") {
    const auto grid = grid_from_art({"..."});
    GrayImage sidecar;
    sidecar.width = 3;
    sidecar.height = 1;
    sidecar.pixels = {1, 5, 10};
    const auto path = temp_path("attr.pgm");
    save_pgm(sidecar, path);
    const AttractionGrid attr = load_attraction(path, grid);
    REQUIRE(attr.at(0, 0) == 1);
    REQUIRE(attr.at(0, 1) == 5);
    REQUIRE(attr.at(0, 2) == 10);
}

TEST_CASE("attraction sidecar rejections") {
    const auto grid = grid_from_art({"..."});

    GrayImage bad;
    bad.width = 3;
    bad.height = 1;
    bad.pixels = {1, 7, 10};
    REQUIRE_THROWS_AS(attraction_from_image(bad, grid), IllegalWeight);

    GrayImage wrong;
    wrong.width = 2;
    wrong.height = 1;
    wrong.pixels = {1, 1};
    REQUIRE_THROWS_AS(attraction_from_image(wrong, grid), DimensionMismatch);

    // Obstacle-cell values are ignored entirely.
    const auto walled = grid_from_art({".#."});
    GrayImage sidecar;
    sidecar.width = 3;
    sidecar.height = 1;
    sidecar.pixels = {5, 99, 10};
    const AttractionGrid attr = attraction_from_image(sidecar, walled);
    REQUIRE(attr.at(0, 0) == 5);
    REQUIRE(attr.at(0, 2) == 10);
}

TEST_CASE("single road cell is one component") {
    const auto mask = largest_component(grid_from_art({"#.#"}));
    REQUIRE(mask.sizes == std::vector<std::int64_t>{1});
    REQUIRE(mask.largest_id == 0);
    REQUIRE(mask.label_at(0, 1) == 0);
}

TEST_CASE("diagonal road cells connect under 8-neighborhood") {
    const auto mask = largest_component(grid_from_art({".#", "#."}));
    REQUIRE(mask.sizes.size() == 1);
    REQUIRE(mask.label_at(0, 0) == mask.label_at(1, 1));
}

TEST_CASE("separated road cells form two components, tie goes to smaller label") {
    // Hand flood fill: (0,0) alone, (3,3)-(3,4) together, gap >= 2 everywhere.
    const auto mask = largest_component(grid_from_art({
        ".####",
        "#####",
        "#####",
        "###..",
        "#####",
    }));
    REQUIRE(mask.sizes == std::vector<std::int64_t>{1, 2});
    REQUIRE(mask.largest_id == 1);
    REQUIRE(mask.label_at(0, 0) == 0);
    REQUIRE(mask.label_at(3, 3) == 1);
    REQUIRE(mask.label_at(3, 4) == 1);

    const auto tied = largest_component(grid_from_art({
        ".####",
        "#####",
        "#####",
        "###.#",
        "#####",
    }));
    REQUIRE(tied.sizes == std::vector<std::int64_t>{1, 1});
    REQUIRE(tied.largest_id == 0);
}

TEST_CASE("component labels partition the road cells") {
    RngStream rng(23, 0, RngPurpose::Placement);
    for (int trial = 0; trial < 30; ++trial) {
        GrayImage img;
        img.width = 1 + static_cast<int>(rng.uniform_below(12));
        img.height = 1 + static_cast<int>(rng.uniform_below(12));
        img.pixels.resize(static_cast<std::size_t>(img.width) * img.height);
        for (auto& p : img.pixels)
            p = rng.uniform_below(100) < 55 ? 0 : 255;
        img.pixels.front() = 0;
        const OccupancyGrid grid = binarize(img, 128);
        const ComponentMask mask = largest_component(grid);

        std::int64_t labelled = 0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            if (grid.cells[i] == kRoad) {
                REQUIRE(mask.labels[i] >= 0);
                REQUIRE(mask.labels[i] < static_cast<std::int32_t>(mask.sizes.size()));
                ++labelled;
            } else {
                REQUIRE(mask.labels[i] == -1);
            }
        }
        std::int64_t size_sum = 0;
        for (auto s : mask.sizes) size_sum += s;
        REQUIRE(size_sum == labelled);
        REQUIRE(labelled == grid.road_count());
    }
}
