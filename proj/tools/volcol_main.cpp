#include "volcol/cli.hpp"

int main(int argc, char** argv) { return volcol::cli_main(argc, argv); }
