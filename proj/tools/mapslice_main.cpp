#include "mapslice/cli.hpp"

int main(int argc, char** argv) { return mapslice::run_cli(argc, argv); }
