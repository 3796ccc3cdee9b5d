#include "hurry/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return hurry::cli::run(argc, argv, std::cout, std::cerr); }
