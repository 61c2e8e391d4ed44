#include <iostream>

#include "geoalg/cli.hpp"

int main(int argc, char** argv) { return geoalg::cli::run(argc, argv, std::cout, std::cerr); }
