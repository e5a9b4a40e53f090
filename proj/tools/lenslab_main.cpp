#include <iostream>
#include <string>
#include <vector>

#include <lenslab/cli.hpp>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return lenslab::run(args, std::cout, std::cerr);
}
