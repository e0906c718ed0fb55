#include "sobandit/cli.hpp"

int main(int argc, char** argv) { return sobandit::cli_main(argc, argv); }
