#include "kholevo/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return kholevo::cli::run(argc, argv, std::cout, std::cerr); }
