#include "forman_cli/cli.hpp"

int main(int argc, char** argv) { return forman::cli::cli_run(argc, argv); }
