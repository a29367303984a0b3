#include <iostream>

#include "kleingate/cli/app.hpp"

int main(int argc, char** argv) { return kleingate::cli::run(argc, argv, std::cout, std::cerr); }
