#include "relprime/cli.hpp"

int main(int argc, char** argv) { return relprime::cli::run(argc, argv); }
