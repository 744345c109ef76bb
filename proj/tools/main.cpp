#include "cli.hpp"

int main(int argc, char** argv) { return amex::cli::cli_main(argc, argv); }
