#include <string>
#include <vector>

#include "epidemigrid/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return epidemigrid::cli_main(args);
}
