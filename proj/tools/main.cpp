#include "cli.hpp"

int main(int argc, char** argv) { return ustokes::cli::main_entry(argc, argv); }
