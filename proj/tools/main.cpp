#include "blindpol/cli.hpp"

int main(int argc, char** argv) { return blindpol::run_cli(argc, argv); }
