#include "gmc/cli.hpp"

int main(int argc, char** argv) { return gmc::run_cli(argc, argv); }
