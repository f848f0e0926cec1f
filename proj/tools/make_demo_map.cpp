// Writes the synthetic demo maps used in the README walkthrough: a 200x200
// all-road square and the street-block map the acceptance suite runs on.

#include <iostream>
#include <string>

#include "epidemigrid/mapgen.hpp"
#include "epidemigrid/pgm.hpp"

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: make_demo_map OUTPUT_DIR\n";
        return 1;
    }
    const std::string dir = argv[1];
    try {
        epidemigrid::save_pgm(epidemigrid::all_road_image(200, 200), dir + "/open200.pgm");
        epidemigrid::save_pgm(epidemigrid::city_blocks_image(200, 200, 7, 4),
                              dir + "/blocks200.pgm");
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    std::cout << "wrote " << dir << "/open200.pgm and " << dir << "/blocks200.pgm\n";
    return 0;
}
