#include "commands.hpp"

int main(int argc, char** argv) { return pabm::cli::run(argc, argv); }
