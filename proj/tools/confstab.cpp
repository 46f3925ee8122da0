#include "confstab/cli.hpp"

int main(int argc, char** argv) { return confstab::cli_main(argc, argv); }
