#include "sgiga/commands.hpp"

int main(int argc, char** argv) { return sgiga::run_cli(argc, argv); }
