#include "cli.hpp"

int main(int argc, char** argv) { return unshuffle::cli::cli_main(argc, argv); }
