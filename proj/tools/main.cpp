#include "strainheat/cli.hpp"

int main(int argc, char** argv) { return strainheat::cli_main(argc, argv); }
