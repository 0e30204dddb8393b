#include "k3iso/cli.hpp"

int main(int argc, char** argv) { return k3iso::cli::run(argc, argv); }
