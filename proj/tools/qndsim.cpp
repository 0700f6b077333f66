#include <iostream>

#include "qndsim/cli.hpp"

int main(int argc, char** argv) { return qndsim::cli::run(argc, argv, std::cout, std::cerr); }
