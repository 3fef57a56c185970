#include "brauer/cli.hpp"

int main(int argc, char** argv) { return brauer::cli_main(argc, argv); }
