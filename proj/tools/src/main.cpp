#include "hivdelay_cli/run.hpp"

int main(int argc, char** argv) { return hivdelay::cli::main_entry(argc, argv); }
