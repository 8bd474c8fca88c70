#include "airline/cli.hpp"

int main(int argc, char** argv) { return airline::cli::run(argc, argv); }
