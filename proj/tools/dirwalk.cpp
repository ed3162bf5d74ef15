#include <string>
#include <vector>

#include "dirwalk/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return dirwalk::cli::run(args);
}
