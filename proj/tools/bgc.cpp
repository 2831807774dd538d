#include "bgc/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return bgc::cli::dispatch(argc, argv, std::cout, std::cerr); }
