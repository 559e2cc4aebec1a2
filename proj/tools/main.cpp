#include "helmscat/cli.hpp"

int main(int argc, char** argv) { return helmscat::run_cli(argc, argv); }
