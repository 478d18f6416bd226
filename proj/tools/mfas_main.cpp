#include <iostream>

#include "mfas/cli.hpp"

int main(int argc, char** argv) { return mfas::run(argc, argv, std::cout, std::cerr); }
