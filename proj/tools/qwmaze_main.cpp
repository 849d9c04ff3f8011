#include "qwmaze/cli.hpp"

int main(int argc, char** argv) { return qwmaze::run_cli(argc, argv); }
