/**
 * @file heunstokes.cpp
 * @brief Entry point of the heunstokes command-line tool.
 */

#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv) { return heunstokes::cli::run_cli(argc, argv, std::cout, std::cerr); }
