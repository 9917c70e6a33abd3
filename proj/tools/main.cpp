#include "cavnet/cli.hpp"

int main(int argc, char** argv) { return cavnet::cli::main(argc, argv); }
