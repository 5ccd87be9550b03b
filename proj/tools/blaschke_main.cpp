#include <blaschke/cli.hpp>

int main(int argc, char** argv) { return blaschke::cli::run(argc, argv); }
