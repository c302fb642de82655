#include "tricert/cli.hpp"

int main(int argc, char** argv) { return tricert::run_cli(argc, argv); }
