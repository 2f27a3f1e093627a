#include "qsearch/cli.hpp"

int main(int argc, char** argv) { return qsearch::run_cli(argc, argv); }
