#include "hecke/io/cli.hpp"

int main(int argc, char** argv) { return hecke::io::run(argc, argv); }
