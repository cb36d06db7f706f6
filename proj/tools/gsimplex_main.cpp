#include "gsimplex/cli.hpp"

int main(int argc, char** argv) { return gsimplex::cli_main(argc, argv); }
