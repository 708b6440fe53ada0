#include "bailbench/cli.hpp"

int main(int argc, char** argv) { return bailbench::cli::run(argc, argv); }
