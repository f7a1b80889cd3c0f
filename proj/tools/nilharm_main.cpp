#include "nilharm/cli.hpp"

int main(int argc, char** argv) { return nilharm::run_cli(argc, argv); }
