#include <iostream>

#include "sdof/cli.hpp"

int main(int argc, char** argv) { return sdof::cli::main_entry(argc, argv, std::cout, std::cerr); }
