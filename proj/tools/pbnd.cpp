#include "pbnd/cli.hpp"

int main(int argc, char** argv) { return pbnd::cli::run(argc, argv); }
