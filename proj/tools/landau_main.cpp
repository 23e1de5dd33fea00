#include <iostream>

#include "landau/cli.hpp"

int main(int argc, char** argv) { return landau::cli::run(argc, argv, std::cout, std::cerr); }
