#include <iostream>

#include "qinv/cli.hpp"

int main(int argc, char** argv) { return qinv::dispatch(argc, argv, std::cout, std::cerr); }
