#include "ahm/cli.hpp"

int main(int argc, char** argv) { return ahm::cli::main(argc, argv); }
