#include "foldmap/cli.hpp"

int main(int argc, char** argv) { return foldmap::cli::run(argc, argv); }
