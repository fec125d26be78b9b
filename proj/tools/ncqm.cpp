#include "cli.hpp"

int main(int argc, char** argv) { return ncqm::cli::run(argc, argv); }
