#include "geoplan_cli/commands.hpp"

int main(int argc, char **argv) { return geoplan::cli::run(argc, argv); }
