#include <apncodes/cli.hpp>

#include <iostream>

int main(int argc, char** argv) { return apncodes::run_cli(argc, argv, std::cout, std::cerr); }
