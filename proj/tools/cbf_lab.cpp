#include "cbf/cli.hpp"

int main(int argc, char** argv) { return cbf::cli_main(argc, argv); }
