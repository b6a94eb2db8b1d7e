#include <iostream>

#include "tkhui/bench.hpp"

int main(int argc, char** argv) { return tkhui::run_cli(argc, argv, std::cout, std::cerr); }
