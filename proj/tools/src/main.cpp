#include <iostream>

#include "medent/cli/commands.hpp"

int main(int argc, char** argv) { return medent::cli::run(argc, argv, std::cout, std::cerr); }
