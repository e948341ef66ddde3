#include "gburn/cli.hpp"

int main(int argc, char** argv) { return gburn::cli::run(argc, argv); }
