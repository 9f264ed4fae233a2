#include "sentinel/cli.h"

int main(int argc, char** argv) { return sentinel::cli::main_entry(argc, argv); }
