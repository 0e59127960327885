#include "rtasm/scenario.hpp"

#include <iostream>

int main(int argc, char** argv) { return rtasm::crossing::run_cli(argc, argv, std::cout, std::cerr); }
