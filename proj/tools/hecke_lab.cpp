#include "hecke_lab_cli.hpp"

int main(int argc, char** argv) { return hecke::cli::run_cli(argc, argv); }
