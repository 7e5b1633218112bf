#include <iostream>

#include "polyfock/cli.hpp"

int main(int argc, char** argv)
{
    return polyfock::cli::run(argc, argv, std::cout, std::cerr);
}
