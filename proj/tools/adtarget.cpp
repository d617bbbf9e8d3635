#include <iostream>
#include <string>
#include <vector>

#include "adtarget/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return adtarget::cli::run(args, std::cout, std::cerr);
}
