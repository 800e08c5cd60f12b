#include <iostream>

#include "afenv/cli.hpp"

int main(int argc, char** argv) { return afenv::cli::main_entry(argc, argv, std::cout, std::cerr); }
