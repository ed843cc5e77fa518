#include "dampspec/cli/app.hpp"

#include <iostream>

int main(int argc, char** argv) { return dampspec::cli::run_cli(argc, argv, std::cout, std::cerr); }
